// matchings.hpp
// Perfect matchings on Q_n, walk concatenation along a sequence of them,
// length-2 connector paths built from a cycle cover and a dimension matching,
// and the gluing step that joins two walks through a connector.
#pragma once

#include <array>
#include <span>
#include <vector>

#include "qpath/cube.hpp"

namespace qpath::construct {

/// A perfect matching given by its partner map. Either the dimension matching
/// of one coordinate, or a matching of Q_w copied onto every Q_w fiber of the
/// low w coordinates (w may equal n).
class PerfectMatching {
public:
    [[nodiscard]] static PerfectMatching dimension(Dim n, int coordinate);
    /// `small_partner[v]` is v's partner in Q_w; it must be a fixed-point-free
    /// involution pairing adjacent vertices.
    [[nodiscard]] static PerfectMatching lifted(Dim n, int width, std::vector<Vertex> small_partner);
    [[nodiscard]] static PerfectMatching from_matching(const Matching& m);

    [[nodiscard]] Dim dim() const { return n_; }
    [[nodiscard]] Vertex partner(Vertex v) const {
        if (table_.empty()) return v ^ flip_;
        return (v & ~low_mask_) | table_[v & low_mask_];
    }
    [[nodiscard]] Matching to_matching() const;

private:
    PerfectMatching(Dim n, Vertex flip, int width, std::vector<Vertex> table);

    Dim n_;
    Vertex flip_ = 0;
    Vertex low_mask_ = 0;
    std::vector<Vertex> table_;
};

enum class StepKind : std::uint8_t { Dimension, Internal };

struct SequenceStep {
    StepKind kind;
    int index;  // coordinate for Dimension, internal matching number for Internal
    PerfectMatching matching;
};

/// Ordered matchings for walk concatenation.
struct MatchingSequence {
    std::vector<SequenceStep> steps;

    /// No two Internal steps adjacent and every Dimension coordinate used once;
    /// under these conditions every concatenated walk is a path.
    [[nodiscard]] bool satisfies_path_invariants() const;
    [[nodiscard]] std::size_t count(StepKind kind) const;
};

/// One walk from every vertex of a side, stored flat. The walk starting at v
/// sits at slot v >> 1 (each pair {2a, 2a+1} has one vertex of each parity).
class WalkSet {
public:
    WalkSet(Dim n, Side side, int length);

    [[nodiscard]] Dim dim() const { return n_; }
    [[nodiscard]] Side side() const { return side_; }
    [[nodiscard]] int length() const { return length_; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(n_.vertex_count() / 2); }
    [[nodiscard]] std::span<const Vertex> walk_from(Vertex start) const;
    [[nodiscard]] std::span<const Vertex> walk(std::size_t slot) const;
    [[nodiscard]] std::span<Vertex> mutable_walk(std::size_t slot);

private:
    Dim n_;
    Side side_;
    int length_;
    std::vector<Vertex> flat_;
};

/// W(M_1, ..., M_L, side): from each vertex of `side`, step along the p-th
/// matching at step p.
[[nodiscard]] WalkSet concat_matchings(const MatchingSequence& seq, Side side, Dim n);

using Connector = std::array<Vertex, 3>;

/// Length-2 paths grouped by the class of their endpoints.
struct ConnectorPaths {
    std::vector<Connector> even;
    std::vector<Connector> odd;
};

/// For each cycle (v_1, ..., v_L) of `layer`, which must cover exactly the
/// vertices with coordinate `c` clear, emits (partner(v_i), v_i, v_{i+1}) where
/// partner flips coordinate c. Cycles are traversed in their stored order.
[[nodiscard]] ConnectorPaths pair_cycles_with_matching(const CycleCover& layer, int c);

/// Glues each connector (u, w, v) between the reversed walk from u and the
/// walk from v, giving paths of length 2L+2. Every vertex of the walks' side
/// must be an endpoint of exactly one connector.
[[nodiscard]] Decomposition join_with_connectors(const WalkSet& walks, std::span<const Connector> connectors);

/// Cuts each cycle into consecutive length-k paths, starting at its first
/// stored vertex. Cycle lengths must be multiples of k and longer than k.
[[nodiscard]] Decomposition cycles_to_paths(const CycleCover& cover, int k);

}  // namespace qpath::construct
