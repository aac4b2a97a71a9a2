#include "qpath/matchings.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace qpath::construct {

PerfectMatching::PerfectMatching(Dim n, Vertex flip, int width, std::vector<Vertex> table)
    : n_(n), flip_(flip), low_mask_(width > 0 ? (Vertex{1} << width) - 1 : 0), table_(std::move(table)) {}

PerfectMatching PerfectMatching::dimension(Dim n, int coordinate) {
    if (coordinate < 1 || coordinate > n.value()) throw PreconditionError("matching coordinate out of range");
    return PerfectMatching(n, coordinate_bit(coordinate), 0, {});
}

PerfectMatching PerfectMatching::lifted(Dim n, int width, std::vector<Vertex> small_partner) {
    if (width < 1 || width > n.value()) throw PreconditionError("lifted matching width out of range");
    if (small_partner.size() != (std::size_t{1} << width)) throw PreconditionError("partner table has the wrong size");
    for (Vertex v = 0; v < small_partner.size(); ++v) {
        const Vertex p = small_partner[v];
        if (p >= small_partner.size() || !adjacent(v, p) || small_partner[p] != v) {
            throw PreconditionError("partner table is not a perfect matching of Q_" + std::to_string(width));
        }
    }
    return PerfectMatching(n, 0, width, std::move(small_partner));
}

PerfectMatching PerfectMatching::from_matching(const Matching& m) {
    const Dim n = m.n;
    if (m.edges.size() != n.vertex_count() / 2) throw PreconditionError("matching is not perfect");
    constexpr Vertex unset = ~Vertex{0};
    std::vector<Vertex> table(n.vertex_count(), unset);
    for (const Edge& e : m.edges) {
        if (e.dir < 1 || e.dir > n.value() || (e.lo & coordinate_bit(e.dir)) || !n.contains(e.lo)) {
            throw PreconditionError("matching contains a malformed edge");
        }
        const Vertex a = e.lo;
        const Vertex b = e.hi();
        if (table[a] != unset || table[b] != unset) throw PreconditionError("matching covers a vertex twice");
        table[a] = b;
        table[b] = a;
    }
    return PerfectMatching(n, 0, n.value(), std::move(table));
}

Matching PerfectMatching::to_matching() const {
    Matching m{n_, {}};
    m.edges.reserve(n_.vertex_count() / 2);
    for (Vertex v = 0; v < n_.vertex_count(); ++v) {
        const Vertex p = partner(v);
        if (v < p) m.edges.push_back(Edge::between(v, p));
    }
    std::sort(m.edges.begin(), m.edges.end());
    return m;
}

bool MatchingSequence::satisfies_path_invariants() const {
    std::vector<int> seen;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (steps[i].kind == StepKind::Internal) {
            if (i > 0 && steps[i - 1].kind == StepKind::Internal) return false;
        } else {
            if (std::find(seen.begin(), seen.end(), steps[i].index) != seen.end()) return false;
            seen.push_back(steps[i].index);
        }
    }
    return true;
}

std::size_t MatchingSequence::count(StepKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [kind](const SequenceStep& s) { return s.kind == kind; }));
}

WalkSet::WalkSet(Dim n, Side side, int length)
    : n_(n), side_(side), length_(length), flat_(static_cast<std::size_t>(n.vertex_count() / 2) * (length + 1)) {
    if (length < 0) throw PreconditionError("walk length must be non-negative");
}

std::span<const Vertex> WalkSet::walk(std::size_t slot) const {
    const std::size_t stride = static_cast<std::size_t>(length_) + 1;
    return {flat_.data() + slot * stride, stride};
}

std::span<Vertex> WalkSet::mutable_walk(std::size_t slot) {
    const std::size_t stride = static_cast<std::size_t>(length_) + 1;
    return {flat_.data() + slot * stride, stride};
}

std::span<const Vertex> WalkSet::walk_from(Vertex start) const {
    if (vertex_parity(start) != side_ || !n_.contains(start)) throw PreconditionError("no walk starts at this vertex");
    return walk(static_cast<std::size_t>(start >> 1));
}

WalkSet concat_matchings(const MatchingSequence& seq, Side side, Dim n) {
    for (const auto& step : seq.steps) {
        if (step.matching.dim() != n) throw PreconditionError("matching lives on a different cube");
    }
    WalkSet out(n, side, static_cast<int>(seq.steps.size()));
    for (std::size_t slot = 0; slot < out.size(); ++slot) {
        Vertex v = static_cast<Vertex>(slot) << 1;
        if (vertex_parity(v) != side) v |= 1;
        auto w = out.mutable_walk(slot);
        w[0] = v;
        for (std::size_t p = 0; p < seq.steps.size(); ++p) {
            v = seq.steps[p].matching.partner(v);
            w[p + 1] = v;
        }
    }
    return out;
}

ConnectorPaths pair_cycles_with_matching(const CycleCover& layer, int c) {
    const Dim n = layer.n;
    if (c < 1 || c > n.value()) throw PreconditionError("connector coordinate out of range");
    const Vertex bit = coordinate_bit(c);
    std::vector<bool> seen(n.vertex_count(), false);
    std::size_t covered = 0;
    for (const auto& cyc : layer.cycles) {
        if (cyc.size() < 4) throw PreconditionError("cycle cover contains a cycle shorter than 4");
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Vertex v = cyc[i];
            if (!n.contains(v) || (v & bit)) throw PreconditionError("cycle vertex lies outside the layer");
            if (!adjacent(v, cyc[(i + 1) % cyc.size()])) throw PreconditionError("cycle cover is not 2-regular");
            if (seen[v]) throw PreconditionError("cycle cover visits a vertex twice");
            seen[v] = true;
            ++covered;
        }
    }
    if (covered != n.vertex_count() / 2) throw PreconditionError("cycle cover does not span the layer");

    ConnectorPaths out;
    out.even.reserve(covered / 2);
    out.odd.reserve(covered / 2);
    for (const auto& cyc : layer.cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Vertex v = cyc[i];
            const Connector conn{v ^ bit, v, cyc[(i + 1) % cyc.size()]};
            // both ends have the parity opposite to the middle vertex
            (vertex_parity(v) == Side::Odd ? out.even : out.odd).push_back(conn);
        }
    }
    return out;
}

Decomposition join_with_connectors(const WalkSet& walks, std::span<const Connector> connectors) {
    const Dim n = walks.dim();
    const int length = 2 * walks.length() + 2;
    if (connectors.size() != walks.size() / 2) throw PreconditionError("connector count does not match the walk set");
    std::vector<bool> used(walks.size(), false);
    for (const Connector& conn : connectors) {
        for (Vertex end : {conn[0], conn[2]}) {
            if (!n.contains(end) || vertex_parity(end) != walks.side())
                throw PreconditionError("connector endpoint is on the wrong side");
            const auto slot = static_cast<std::size_t>(end >> 1);
            if (used[slot]) throw PreconditionError("vertex is an endpoint of two connectors");
            used[slot] = true;
        }
        if (!adjacent(conn[0], conn[1]) || !adjacent(conn[1], conn[2]))
            throw PreconditionError("connector is not a path of length 2");
    }

    Decomposition out(n, length);
    out.reserve(connectors.size());
    std::vector<Vertex> path;
    path.reserve(static_cast<std::size_t>(length) + 1);
    for (const Connector& conn : connectors) {
        path.clear();
        const auto head = walks.walk_from(conn[0]);
        path.insert(path.end(), head.rbegin(), head.rend());
        path.push_back(conn[1]);
        const auto tail = walks.walk_from(conn[2]);
        path.insert(path.end(), tail.begin(), tail.end());
        out.add_path(path);
    }
    return out;
}

Decomposition cycles_to_paths(const CycleCover& cover, int k) {
    if (k < 1) throw PreconditionError("path length must be at least 1");
    Decomposition out(cover.n, k);
    const auto ku = static_cast<std::size_t>(k);
    out.reserve(cover.edge_count() / ku);
    std::vector<Vertex> path(ku + 1);
    for (const auto& cyc : cover.cycles) {
        if (cyc.size() % ku != 0) throw PreconditionError("cycle length is not a multiple of the path length");
        if (cyc.size() == ku) throw PreconditionError("a cycle of length k is a closed walk, not a path");
        for (std::size_t start = 0; start < cyc.size(); start += ku) {
            for (std::size_t j = 0; j <= ku; ++j) path[j] = cyc[(start + j) % cyc.size()];
            out.add_path(path);
        }
    }
    return out;
}

}  // namespace qpath::construct
