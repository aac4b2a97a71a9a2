// checker.hpp
// Independent validation of walks, paths, full path decompositions, and
// Hamiltonian cycle families, plus the feasibility predicates.
//
// Nothing here depends on the construction code; only cube.hpp types are shared.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpath/cube.hpp"

namespace qpath::checker {

enum class FailureKind : std::uint8_t {
    NonAdjacentStep,
    RepeatedVertex,
    WrongLength,
    VertexOutOfRange,
    DuplicateEdge,
    MissingEdge,
    WrongPathCount,
};

[[nodiscard]] const char* to_string(FailureKind kind);

struct Failure {
    FailureKind kind;
    std::size_t path = 0;       // index of the offending path, when applicable
    std::size_t position = 0;   // vertex / step index inside the path
    Edge edge{};                // DuplicateEdge, MissingEdge
    std::uint64_t expected = 0; // WrongLength, WrongPathCount
    std::uint64_t actual = 0;
};

struct ValidationReport {
    std::optional<Failure> failure;

    [[nodiscard]] bool ok() const { return !failure.has_value(); }
    explicit operator bool() const { return ok(); }
    /// One-line human-readable summary ("ok" or the cause with its location).
    [[nodiscard]] std::string describe(Dim n) const;
};

/// Checks that `p` has k+1 vertices inside Q_n, consecutive ones adjacent,
/// all distinct. Failures are reported in that order of checks, scanning left
/// to right.
[[nodiscard]] ValidationReport validate_path(std::span<const Vertex> p, Dim n, int k);

/// Like validate_path without the distinctness requirement.
[[nodiscard]] ValidationReport validate_walk(std::span<const Vertex> w, Dim n, int k);

/// Every path valid (checked in input order), no edge used twice, every edge
/// of Q_n used, and exactly n*2^(n-1)/k paths. Coverage is tracked in a dense
/// bit table with one slot per edge.
[[nodiscard]] ValidationReport validate_decomposition(const Decomposition& d);

/// Checks that `cycles` are Hamiltonian cycles of Q_m that partition E(Q_m).
/// Returns a description of the first problem, or nullopt when valid.
[[nodiscard]] std::optional<std::string> check_hamiltonian_decomposition(
    Dim m, const std::vector<std::vector<Vertex>>& cycles);

/// Odd-n criterion: k | n*2^(n-1) and k <= n. Throws PreconditionError for even n.
[[nodiscard]] bool feasible(Dim n, std::uint64_t k);

/// Conjectured even-n criterion: k | n*2^(n-1) and k < 2^n. Throws for odd n.
[[nodiscard]] bool feasible_even(Dim n, std::uint64_t k);

/// k | n*2^(n-1), computed without forming the product.
[[nodiscard]] bool divides_edge_count(Dim n, std::uint64_t k);

/// Why `feasible` rejects (n, k); empty if it does not.
[[nodiscard]] std::string infeasibility_reason(Dim n, std::uint64_t k);
[[nodiscard]] std::string infeasibility_reason_even(Dim n, std::uint64_t k);

}  // namespace qpath::checker
