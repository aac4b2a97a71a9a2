// Length-2^r paths on odd cubes.
//
// Q_n is reduced to Q_{2^r + l} (low coordinates) times copies of Q_w (high
// coordinates), w = r+1 or r+2 so that w is even and Q_w has a Hamiltonian
// decomposition. On the residual cube, with the small cube Q_w on coordinates
// 1..w:
//   G_i      one kept Hamiltonian cycle of Q_w, copied onto every Q_w fiber
//   I_j      half of a non-kept cycle, copied likewise (a perfect matching)
//   M_t      dimension matchings for t = w+1 .. residual
// G_1 restricted to q_{w+1} = 0 is paired with M_{w+1} into length-2 connectors;
// the I_j and M_{w+2..} are concatenated into walks from each side and glued
// pairwise through the connectors; the remaining cycles are cut into paths.
#include <array>
#include <string>

#include "qpath/constructions.hpp"
#include "qpath/matchings.hpp"

namespace qpath::construct {

PowCaseParams PowCaseParams::reduce(Dim n, int r) {
    const int nv = n.value();
    if (nv % 2 == 0) throw PreconditionError("power-of-two construction needs odd n");
    if (r < 1 || r > 5 || (1 << r) >= nv) {
        throw PreconditionError("need r >= 1 and 2^r < n (n=" + std::to_string(nv) + ", r=" + std::to_string(r) + ")");
    }
    PowCaseParams p;
    p.n = nv;
    p.r = r;
    p.width = (r % 2 == 1) ? r + 1 : r + 2;
    const int excess = nv - (1 << r);  // odd, >= 1
    p.l = (excess - 1) % p.width + 1;
    p.residual = (1 << r) + p.l;
    p.split_factors = (nv - p.residual) / p.width;
    p.cycles_kept = (p.l + 1) / 2;
    p.internal_matchings = p.width - (p.l + 1);
    p.dimension_matchings = p.residual - p.width - 1;

    if (p.l % 2 != 1 || p.l < 1 || p.l > p.width - 1 || p.residual + p.split_factors * p.width != nv) {
        throw InvariantError("reduction to n = 2^r + l failed");
    }
    if (!p.special_q5()) {
        if (p.dimension_matchings < 1 && p.walk_length() > 0) {
            throw InvariantError("no dimension matching beyond the connector coordinate");
        }
        if (p.dimension_matchings < p.internal_matchings) {
            throw InvariantError("fewer dimension matchings than internal matchings");
        }
        if (p.dimension_matchings + p.internal_matchings != 2 * p.walk_length()) {
            throw InvariantError("matching budget does not fill two walk sequences");
        }
    }
    return p;
}

namespace {

constexpr Vertex q3(const char* bits) {
    Vertex v = 0;
    for (int i = 0; bits[i]; ++i) {
        if (bits[i] == '1') v |= Vertex{1} << i;
    }
    return v;
}

CycleCover lift_cycle(const std::vector<Vertex>& cycle, Dim n, int width, bool (*keep_fiber)(Vertex)) {
    CycleCover cover{n, {}};
    const Vertex fibers = Vertex{1} << (n.value() - width);
    for (Vertex f = 0; f < fibers; ++f) {
        if (keep_fiber && !keep_fiber(f)) continue;
        std::vector<Vertex> c;
        c.reserve(cycle.size());
        const Vertex fixed = f << width;
        for (Vertex v : cycle) c.push_back(fixed | v);
        cover.cycles.push_back(std::move(c));
    }
    return cover;
}

bool fiber_low_layer(Vertex f) { return (f & 1) == 0; }
bool fiber_high_layer(Vertex f) { return (f & 1) == 1; }

// Splits a cycle of Q_w into its two alternating perfect matchings.
std::array<std::vector<Vertex>, 2> halve_cycle(const std::vector<Vertex>& cycle) {
    std::array<std::vector<Vertex>, 2> tables{std::vector<Vertex>(cycle.size()), std::vector<Vertex>(cycle.size())};
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Vertex a = cycle[i];
        const Vertex b = cycle[(i + 1) % cycle.size()];
        auto& table = tables[i % 2];
        table[a] = b;
        table[b] = a;
    }
    return tables;
}

// M, I, M, I, ... while internal matchings remain, then trailing M's.
MatchingSequence interleave(std::vector<SequenceStep> dims, std::vector<SequenceStep> internals) {
    if (dims.size() < internals.size()) throw InvariantError("walk sequence has more internal than dimension matchings");
    MatchingSequence seq;
    std::size_t di = 0;
    std::size_t ii = 0;
    while (di < dims.size() || ii < internals.size()) {
        if (di < dims.size()) seq.steps.push_back(std::move(dims[di++]));
        if (ii < internals.size()) seq.steps.push_back(std::move(internals[ii++]));
    }
    if (!seq.satisfies_path_invariants()) throw InvariantError("walk sequence breaks the path invariants");
    return seq;
}

void append_all(Decomposition& out, const Decomposition& part) {
    if (part.size() > 0) out.append(part);
}

}  // namespace

Decomposition special_q5_k4() {
    const Dim n(5);
    const std::vector<Vertex> gray{q3("000"), q3("100"), q3("110"), q3("010"),
                                   q3("011"), q3("111"), q3("101"), q3("001")};
    // the matching of Q_3 left after removing the 8-cycle
    std::vector<Vertex> residual(8);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        const Vertex v = gray[i];
        const Vertex used = (v ^ gray[(i + 1) % 8]) | (v ^ gray[(i + 7) % 8]);
        residual[v] = v ^ (Vertex{7} & ~used);
    }

    const CycleCover lower = lift_cycle(gray, n, 3, fiber_low_layer);   // q4 = 0
    const CycleCover upper = lift_cycle(gray, n, 3, fiber_high_layer);  // q4 = 1
    const ConnectorPaths conns = pair_cycles_with_matching(lower, 4);

    MatchingSequence internal_seq;
    internal_seq.steps.push_back({StepKind::Internal, 1, PerfectMatching::lifted(n, 3, residual)});
    MatchingSequence dimension_seq;
    dimension_seq.steps.push_back({StepKind::Dimension, 5, PerfectMatching::dimension(n, 5)});

    Decomposition out(n, 4);
    out.reserve(20);
    append_all(out, join_with_connectors(concat_matchings(internal_seq, Side::Even, n), conns.even));
    append_all(out, join_with_connectors(concat_matchings(dimension_seq, Side::Odd, n), conns.odd));
    append_all(out, cycles_to_paths(upper, 4));
    return out;
}

Decomposition power_of_two_core(const PowCaseParams& p, HamiltonianProvider& provider) {
    if (p.special_q5()) return special_q5_k4();
    const Dim n(p.residual);
    const int w = p.width;
    const int k = 1 << p.r;

    const CycleFamily ham = provider.cycles(w);
    if (static_cast<int>(ham.size()) != w / 2) throw InvariantError("Hamiltonian provider returned the wrong count");

    // internal matchings from the cycles that are not kept
    std::vector<SequenceStep> internals;
    for (std::size_t c = static_cast<std::size_t>(p.cycles_kept); c < ham.size(); ++c) {
        for (auto& table : halve_cycle(ham[c])) {
            const int index = static_cast<int>(internals.size()) + 1;
            internals.push_back({StepKind::Internal, index, PerfectMatching::lifted(n, w, std::move(table))});
        }
    }
    if (static_cast<int>(internals.size()) != p.internal_matchings) throw InvariantError("internal matching count");

    const int L = p.walk_length();
    const std::size_t even_internal = (internals.size() + 1) / 2;
    const std::size_t odd_internal = internals.size() - even_internal;
    const int even_dims = L - static_cast<int>(even_internal);
    const int odd_dims = L - static_cast<int>(odd_internal);
    if (even_dims + odd_dims != p.dimension_matchings) throw InvariantError("dimension matching count");

    std::vector<SequenceStep> even_steps_dim, odd_steps_dim;
    int coord = w + 2;
    for (int i = 0; i < even_dims; ++i, ++coord)
        even_steps_dim.push_back({StepKind::Dimension, coord, PerfectMatching::dimension(n, coord)});
    for (int i = 0; i < odd_dims; ++i, ++coord)
        odd_steps_dim.push_back({StepKind::Dimension, coord, PerfectMatching::dimension(n, coord)});
    std::vector<SequenceStep> even_steps_int(std::make_move_iterator(internals.begin()),
                                             std::make_move_iterator(internals.begin() + static_cast<long>(even_internal)));
    std::vector<SequenceStep> odd_steps_int(std::make_move_iterator(internals.begin() + static_cast<long>(even_internal)),
                                            std::make_move_iterator(internals.end()));

    const MatchingSequence even_seq = interleave(std::move(even_steps_dim), std::move(even_steps_int));
    const MatchingSequence odd_seq = interleave(std::move(odd_steps_dim), std::move(odd_steps_int));
    // the middle vertex of a connector must differ from the far walk in some dimension coordinate
    for (const auto* seq : {&even_seq, &odd_seq}) {
        if (!seq->steps.empty() && seq->steps.front().kind != StepKind::Dimension)
            throw InvariantError("walk sequence must open with a dimension matching");
    }

    const CycleCover g1_lower = lift_cycle(ham[0], n, w, fiber_low_layer);
    const CycleCover g1_upper = lift_cycle(ham[0], n, w, fiber_high_layer);
    const ConnectorPaths conns = pair_cycles_with_matching(g1_lower, w + 1);

    Decomposition out(n, k);
    out.reserve(static_cast<std::size_t>(n.edge_count() / static_cast<std::uint64_t>(k)));
    append_all(out, join_with_connectors(concat_matchings(even_seq, Side::Even, n), conns.even));
    append_all(out, join_with_connectors(concat_matchings(odd_seq, Side::Odd, n), conns.odd));
    append_all(out, cycles_to_paths(g1_upper, k));
    for (std::size_t c = 1; c < static_cast<std::size_t>(p.cycles_kept); ++c) {
        append_all(out, cycles_to_paths(lift_cycle(ham[c], n, w, nullptr), k));
    }
    if (out.size() * static_cast<std::size_t>(k) != n.edge_count()) {
        throw InvariantError("power-of-two core did not account for every edge");
    }
    return out;
}

Decomposition power_of_two_decomposition(Dim n, int r, HamiltonianProvider& provider) {
    if (r == 0) return subdivide(antipodal_decomposition(n), 1);
    const PowCaseParams p = PowCaseParams::reduce(n, r);
    Decomposition result = power_of_two_core(p, provider);
    if (p.split_factors == 0) return result;

    CycleCover factor_cycles{Dim(p.width), provider.cycles(p.width)};
    const Decomposition factor = cycles_to_paths(factor_cycles, 1 << r);
    for (int i = 0; i < p.split_factors; ++i) result = product_split(result, factor);
    return result;
}

Decomposition power_of_two_decomposition(Dim n, int r) {
    return power_of_two_decomposition(n, r, default_hamiltonian_provider());
}

}  // namespace qpath::construct
