// cube.hpp
// Bit-level hypercube primitives: vertices, canonical edges, walks, matchings,
// cycle covers, decompositions, and subcube embeddings.
//
// Coordinate convention: coordinate q_i (1-indexed) lives in bit i-1 of a
// Vertex. Binary strings print q_1 leftmost.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpath {

using Vertex = std::uint64_t;

inline constexpr int kMaxDim = 62;

/// Raised when an argument violates an operation's documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a construction detects a broken internal invariant.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised on malformed certificate or cache files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Number of hypercube coordinates, 1 <= n <= 62.
class Dim {
public:
    constexpr explicit Dim(int n) : n_(n) {
        if (n < 1 || n > kMaxDim) throw PreconditionError("dimension out of range [1, 62]: " + std::to_string(n));
    }
    [[nodiscard]] constexpr int value() const { return n_; }
    [[nodiscard]] constexpr std::uint64_t vertex_count() const { return std::uint64_t{1} << n_; }
    [[nodiscard]] constexpr std::uint64_t edge_count() const {
        return static_cast<std::uint64_t>(n_) << (n_ - 1);
    }
    [[nodiscard]] constexpr Vertex all_ones() const { return (Vertex{1} << n_) - 1; }
    [[nodiscard]] constexpr bool contains(Vertex v) const { return (v >> n_) == 0; }
    constexpr auto operator<=>(const Dim&) const = default;

private:
    int n_;
};

enum class Side : std::uint8_t { Even, Odd };

[[nodiscard]] constexpr Side vertex_parity(Vertex v) {
    return (std::popcount(v) & 1) == 0 ? Side::Even : Side::Odd;
}

[[nodiscard]] constexpr Vertex antipode(Vertex v, Dim n) { return v ^ n.all_ones(); }

[[nodiscard]] constexpr Vertex coordinate_bit(int i) { return Vertex{1} << (i - 1); }

[[nodiscard]] constexpr bool adjacent(Vertex a, Vertex b) { return std::has_single_bit(a ^ b); }

/// Canonical undirected edge: `lo` has coordinate `dir` clear, the other
/// endpoint is `lo` with it set.
struct Edge {
    Vertex lo = 0;
    int dir = 1;

    [[nodiscard]] static Edge between(Vertex a, Vertex b);
    [[nodiscard]] constexpr Vertex hi() const { return lo | coordinate_bit(dir); }
    constexpr auto operator<=>(const Edge&) const = default;
};

/// Slot of `e` in a dense table of n*2^(n-1) edges (grouped by direction).
[[nodiscard]] std::uint64_t edge_index(const Edge& e, Dim n);
[[nodiscard]] Edge edge_from_index(std::uint64_t index, Dim n);

using Walk = std::vector<Vertex>;

/// A set of edges in which no vertex is incident to two edges.
struct Matching {
    Dim n;
    std::vector<Edge> edges;
};

/// Disjoint cycles, each stored as its cyclic vertex sequence (the closing
/// edge back to the first vertex is implicit).
struct CycleCover {
    Dim n;
    std::vector<std::vector<Vertex>> cycles;

    [[nodiscard]] std::size_t edge_count() const;
    [[nodiscard]] std::vector<Edge> edges() const;
};

/// Paths of a common length k, stored flat with stride k+1. The same container
/// carries partial path sets while a construction is being assembled.
class Decomposition {
public:
    Decomposition(Dim n, int k);

    [[nodiscard]] Dim dim() const { return n_; }
    [[nodiscard]] int length() const { return k_; }
    [[nodiscard]] std::size_t stride() const { return static_cast<std::size_t>(k_) + 1; }
    [[nodiscard]] std::size_t size() const { return vertices_.size() / stride(); }
    [[nodiscard]] std::span<const Vertex> path(std::size_t i) const {
        return {vertices_.data() + i * stride(), stride()};
    }
    [[nodiscard]] std::span<const Vertex> flat() const { return vertices_; }

    void reserve(std::size_t paths) { vertices_.reserve(paths * stride()); }
    /// Appends a vertex sequence of exactly k+1 entries; contents are not validated here.
    void add_path(std::span<const Vertex> p);
    void append(const Decomposition& other);
    std::vector<Vertex>& mutable_flat() { return vertices_; }

    bool operator==(const Decomposition& other) const = default;

private:
    Dim n_;
    int k_;
    std::vector<Vertex> vertices_;
};

/// Every edge flipping coordinate i, one per vertex pair.
[[nodiscard]] Matching dimension_matching(Dim n, int i);

/// Relabels a small-cube object into a larger cube: inner coordinate j maps to
/// block[j-1] (1-indexed target coordinates) and every other target
/// coordinate is taken from `fixed`.
class Embedding {
public:
    Embedding(Dim target, std::vector<int> block, Vertex fixed);

    [[nodiscard]] Dim target() const { return target_; }
    [[nodiscard]] int inner_dim() const { return static_cast<int>(block_.size()); }
    [[nodiscard]] Vertex apply(Vertex inner) const;
    [[nodiscard]] Edge apply(const Edge& inner) const;

    [[nodiscard]] Walk apply(std::span<const Vertex> inner) const;
    [[nodiscard]] Matching apply(const Matching& inner) const;
    [[nodiscard]] CycleCover apply(const CycleCover& inner) const;

private:
    Dim target_;
    std::vector<int> block_;
    Vertex fixed_;
    int shift_ = -1;  // >= 0 when block is a contiguous ascending run
};

/// q_1 leftmost.
[[nodiscard]] std::string to_binary(Vertex v, Dim n);
/// Inverse of to_binary; throws PreconditionError on bad characters.
[[nodiscard]] Vertex from_binary(std::string_view s);

/// Starts the cycle at its minimum vertex and steps first toward the smaller
/// of that vertex's two cycle neighbours.
void canonicalize_cycle(std::vector<Vertex>& cycle);

}  // namespace qpath
