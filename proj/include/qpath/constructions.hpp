// constructions.hpp
// Constructive path decompositions of Q_n.
//
// The top-level entry point is decompose(n, k) for odd n: write k = t * 2^r
// with t odd, decompose Q_{n/t} into length-2^r paths, then lift through
// blocks of t coordinates. Everything it composes is exposed for testing.
#pragma once

#include <cstdint>
#include <optional>

#include "qpath/cube.hpp"
#include "qpath/hamiltonian.hpp"

namespace qpath::construct {

/// Thrown when (n, k) fails the conditions a construction needs.
class InfeasibleError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Outputs are refused beyond this many stored vertices (2 GiB).
inline constexpr std::uint64_t kMaxStoredVertices = std::uint64_t{1} << 28;

/// One path from each even vertex q: q, q^e1, q^e1^e2, ..., antipode(q).
[[nodiscard]] Decomposition antipodal_decomposition(Dim n);

/// Every edge of Q_n as its own path, ordered by (direction, lower endpoint).
[[nodiscard]] Decomposition single_edge_decomposition(Dim n);

/// Cuts every path into d.length()/k consecutive pieces.
[[nodiscard]] Decomposition subdivide(const Decomposition& d, int k);

/// Q_m into length-s paths  ->  Q_{t m} into length-(t s) paths, t odd.
///
/// Target coordinates form m consecutive blocks of t. Vertices differing by a
/// union of whole blocks form one class, and on each class the quotient is a
/// copy of Q_m whose edge "flip block j" stands for the t physical edges
/// flipping that block's coordinates in increasing order, starting from the
/// endpoint p with popcount(p) + (j - 1) even.
[[nodiscard]] Decomposition lift_by_blocks(int t, const Decomposition& inner);

/// Q_i and Q_j decompositions with equal k  ->  Q_{i+j}. `low` occupies
/// coordinates 1..i and `high` coordinates i+1..i+j. Copies of `high` come
/// first (one per low assignment), then copies of `low`.
[[nodiscard]] Decomposition product_split(const Decomposition& low, const Decomposition& high);

/// Q_5 into twenty length-4 paths from a Gray-code 8-cycle of Q_3 layered over
/// (q4, q5).
[[nodiscard]] Decomposition special_q5_k4();

/// Bookkeeping for length-2^r paths on odd Q_n.
struct PowCaseParams {
    int n = 0;              // requested dimension
    int r = 0;
    int width = 0;          // small cube: r+1 for odd r, r+2 for even r
    int residual = 0;       // 2^r + l, kept on the low coordinates
    int l = 0;              // odd, 1 <= l <= width-1
    int split_factors = 0;  // copies of Q_width split off the high coordinates
    int cycles_kept = 0;    // (l+1)/2 Hamiltonian cycles lifted whole
    int internal_matchings = 0;  // width - (l+1), from halving the other cycles
    int dimension_matchings = 0; // residual - width - 1, excluding the connector coordinate

    /// Throws PreconditionError unless n is odd, r >= 1 and 2^r < n.
    [[nodiscard]] static PowCaseParams reduce(Dim n, int r);
    [[nodiscard]] bool special_q5() const { return r == 2 && l == 1; }
    [[nodiscard]] int walk_length() const { return (1 << (r - 1)) - 1; }
};

/// Decomposition of Q_{residual} for the given parameters, the core step
/// (no split factors). Special case r=2, l=1 delegates to special_q5_k4.
[[nodiscard]] Decomposition power_of_two_core(const PowCaseParams& params, HamiltonianProvider& provider);

/// Q_n (odd) into length-2^r paths, 2^r < n.
[[nodiscard]] Decomposition power_of_two_decomposition(Dim n, int r, HamiltonianProvider& provider);
[[nodiscard]] Decomposition power_of_two_decomposition(Dim n, int r);

/// Q_n into length-k paths for odd n with k | n 2^(n-1) and k <= n.
/// Throws InfeasibleError naming the violated condition otherwise.
[[nodiscard]] Decomposition decompose(Dim n, int k, HamiltonianProvider& provider);
[[nodiscard]] Decomposition decompose(Dim n, int k);

/// Even n, t odd with t | n: Hamiltonian cycles of Q_{n/t} halved into
/// length-2^(n/t - 1) paths, then lifted by t.
[[nodiscard]] Decomposition even_n_decomposition(Dim n, int t, HamiltonianProvider& provider);
[[nodiscard]] Decomposition even_n_decomposition(Dim n, int t);

/// The odd t with k == t * 2^(n/t - 1), if the even-n construction reaches k.
[[nodiscard]] std::optional<int> even_construction_block(Dim n, std::uint64_t k);

}  // namespace qpath::construct
