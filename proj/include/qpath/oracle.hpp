// oracle.hpp
// Brute-force ground truth for tiny cubes: an exact-cover search for path
// decompositions and a backtracking search for Hamiltonian decompositions.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpath/cube.hpp"

namespace qpath::oracle {

struct SearchBudget {
    std::uint64_t node_limit = 50'000'000;
    double time_limit_seconds = 60.0;

    SearchBudget() = default;
    SearchBudget(std::uint64_t nodes, double seconds);
};

enum class SearchStatus : std::uint8_t {
    Found,
    None,            // search space exhausted; a certificate of non-existence
    BudgetExceeded,  // inconclusive
};

[[nodiscard]] const char* to_string(SearchStatus s);

struct DecompositionSearchResult {
    SearchStatus status;
    std::optional<Decomposition> witness;
    std::uint64_t nodes = 0;
    std::uint64_t candidate_paths = 0;
};

inline constexpr int kMaxBruteForceDim = 5;
inline constexpr int kMaxHamiltonianSearchDim = 8;

/// All length-k paths of Q_n, one orientation each (the lexicographically
/// smaller one), in lexicographic order.
[[nodiscard]] std::vector<std::vector<Vertex>> enumerate_paths(Dim n, int k);

/// Exact cover of E(Q_n) by length-k paths (rows = paths, columns = edges),
/// branching on the edge with the fewest remaining candidate paths.
[[nodiscard]] DecompositionSearchResult brute_force_decomposition(Dim n, int k, const SearchBudget& budget = {});

struct HamiltonianSearchResult {
    SearchStatus status;
    std::vector<std::vector<Vertex>> cycles;
    std::uint64_t nodes = 0;
};

/// m/2 edge-disjoint Hamiltonian cycles of Q_m, found one after another.
/// The first cycle is pinned to start 0 -> e1 -> e1+e2; the next-to-last cycle
/// is searched with a check that the leftover edges close into a single cycle.
/// Returned cycles are in canonical orientation and verified.
[[nodiscard]] HamiltonianSearchResult search_hamiltonian_decomposition(Dim m, const SearchBudget& budget = {});

}  // namespace qpath::oracle
