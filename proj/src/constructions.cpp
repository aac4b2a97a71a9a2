#include "qpath/constructions.hpp"

#include <bit>
#include <string>

#include "qpath/checker.hpp"
#include "qpath/matchings.hpp"

namespace qpath::construct {

namespace {

void require_materializable(int n, int k) {
    if (n > 34) throw PreconditionError("Q_" + std::to_string(n) + " is too large to materialize");
    const Dim dim(n);
    const std::uint64_t paths = dim.edge_count() / static_cast<std::uint64_t>(k);
    if (paths * (static_cast<std::uint64_t>(k) + 1) > kMaxStoredVertices) {
        throw PreconditionError("decomposition of Q_" + std::to_string(n) + " into length-" + std::to_string(k) +
                                " paths is too large to materialize");
    }
}

}  // namespace

Decomposition antipodal_decomposition(Dim n) {
    require_materializable(n.value(), n.value());
    Decomposition d(n, n.value());
    d.reserve(static_cast<std::size_t>(n.vertex_count() / 2));
    std::vector<Vertex> path(static_cast<std::size_t>(n.value()) + 1);
    for (Vertex q = 0; q < n.vertex_count(); ++q) {
        if (vertex_parity(q) != Side::Even) continue;
        for (int i = 0; i <= n.value(); ++i) path[static_cast<std::size_t>(i)] = q ^ ((Vertex{1} << i) - 1);
        d.add_path(path);
    }
    return d;
}

Decomposition single_edge_decomposition(Dim n) {
    require_materializable(n.value(), 1);
    Decomposition d(n, 1);
    d.reserve(static_cast<std::size_t>(n.edge_count()));
    for (int i = 1; i <= n.value(); ++i) {
        const Vertex bit = coordinate_bit(i);
        for (Vertex v = 0; v < n.vertex_count(); ++v) {
            if (v & bit) continue;
            const Vertex edge[2] = {v, v | bit};
            d.add_path(edge);
        }
    }
    return d;
}

Decomposition subdivide(const Decomposition& d, int k) {
    if (k < 1 || d.length() % k != 0) {
        throw PreconditionError("subdivision length " + std::to_string(k) + " does not divide " +
                                std::to_string(d.length()));
    }
    Decomposition out(d.dim(), k);
    const std::size_t pieces = static_cast<std::size_t>(d.length() / k);
    out.reserve(d.size() * pieces);
    for (std::size_t p = 0; p < d.size(); ++p) {
        const auto path = d.path(p);
        for (std::size_t j = 0; j < pieces; ++j) {
            out.add_path(path.subspan(j * static_cast<std::size_t>(k), static_cast<std::size_t>(k) + 1));
        }
    }
    return out;
}

Decomposition lift_by_blocks(int t, const Decomposition& inner) {
    if (t < 1 || t % 2 == 0) throw PreconditionError("block size must be odd, got " + std::to_string(t));
    if (t == 1) return inner;
    const int m = inner.dim().value();
    if (static_cast<long>(t) * m > kMaxDim) throw PreconditionError("lifted dimension exceeds 62");
    const Dim n(t * m);
    const int s = inner.length();
    require_materializable(n.value(), t * s);

    const Vertex block = (Vertex{1} << t) - 1;
    Vertex leaders = 0;  // first coordinate of each block
    for (int j = 0; j < m; ++j) leaders |= Vertex{1} << (j * t);
    const Vertex free = n.all_ones() & ~leaders;

    Decomposition out(n, t * s);
    out.reserve(static_cast<std::size_t>(n.vertex_count() >> m) * inner.size());
    std::vector<Vertex> path(static_cast<std::size_t>(t * s) + 1);

    Vertex base = 0;
    do {
        for (std::size_t p = 0; p < inner.size(); ++p) {
            const auto q = inner.path(p);
            Vertex cur = base;
            for (Vertex y = q[0]; y; y &= y - 1) cur ^= block << (std::countr_zero(y) * t);
            std::size_t pos = 0;
            path[pos++] = cur;
            for (std::size_t a = 0; a + 1 < q.size(); ++a) {
                const int j = std::countr_zero(q[a] ^ q[a + 1]);  // 0-based block
                const int first = j * t;
                const bool forward = ((std::popcount(cur) + j) & 1) == 0;
                for (int b = 0; b < t; ++b) {
                    const int coord = forward ? first + b : first + t - 1 - b;
                    cur ^= Vertex{1} << coord;
                    path[pos++] = cur;
                }
            }
            out.add_path(path);
        }
        base = (base - free) & free;
    } while (base != 0);
    return out;
}

Decomposition product_split(const Decomposition& low, const Decomposition& high) {
    if (low.length() != high.length()) throw PreconditionError("product split needs equal path lengths");
    const int i = low.dim().value();
    const int j = high.dim().value();
    if (i + j > kMaxDim) throw PreconditionError("product dimension exceeds 62");
    const Dim n(i + j);
    require_materializable(n.value(), low.length());

    Decomposition out(n, low.length());
    out.reserve((std::size_t{1} << i) * high.size() + (std::size_t{1} << j) * low.size());
    std::vector<Vertex> path(low.stride());
    for (Vertex x = 0; x < low.dim().vertex_count(); ++x) {
        for (std::size_t p = 0; p < high.size(); ++p) {
            const auto src = high.path(p);
            for (std::size_t a = 0; a < src.size(); ++a) path[a] = x | (src[a] << i);
            out.add_path(path);
        }
    }
    for (Vertex y = 0; y < high.dim().vertex_count(); ++y) {
        const Vertex fixed = y << i;
        for (std::size_t p = 0; p < low.size(); ++p) {
            const auto src = low.path(p);
            for (std::size_t a = 0; a < src.size(); ++a) path[a] = fixed | src[a];
            out.add_path(path);
        }
    }
    return out;
}

Decomposition decompose(Dim n, int k, HamiltonianProvider& provider) {
    if (n.value() % 2 == 0) throw InfeasibleError("n is even; the odd-n construction does not apply");
    if (k < 1) throw InfeasibleError("k ≥ 1 violated");
    if (auto reason = checker::infeasibility_reason(n, static_cast<std::uint64_t>(k)); !reason.empty()) {
        throw InfeasibleError(reason);
    }
    if (k == 1) return single_edge_decomposition(n);
    if (k == n.value()) return antipodal_decomposition(n);

    const int r = std::countr_zero(static_cast<unsigned>(k));
    const int t = k >> r;
    const Dim m(n.value() / t);
    require_materializable(n.value(), k);
    const Decomposition inner = r == 0 ? single_edge_decomposition(m) : power_of_two_decomposition(m, r, provider);
    return lift_by_blocks(t, inner);
}

Decomposition decompose(Dim n, int k) { return decompose(n, k, default_hamiltonian_provider()); }

Decomposition even_n_decomposition(Dim n, int t, HamiltonianProvider& provider) {
    if (n.value() % 2 != 0) throw InfeasibleError("even-n construction needs even n");
    if (t < 1 || t % 2 == 0 || n.value() % t != 0) throw InfeasibleError("t must be an odd divisor of n");
    const Dim m(n.value() / t);
    if (m.value() > HamiltonianProvider::kDefaultLimit * 2) {
        throw PreconditionError("Q_" + std::to_string(m.value()) + " is beyond any Hamiltonian provider");
    }
    const int inner_k = 1 << (m.value() - 1);
    require_materializable(n.value(), t * inner_k);
    const auto cycles = hamiltonian_decomposition(m, provider);
    CycleCover all{m, {}};
    for (const auto& c : cycles) all.cycles.insert(all.cycles.end(), c.cycles.begin(), c.cycles.end());
    const Decomposition inner = cycles_to_paths(all, inner_k);
    return lift_by_blocks(t, inner);
}

Decomposition even_n_decomposition(Dim n, int t) { return even_n_decomposition(n, t, default_hamiltonian_provider()); }

std::optional<int> even_construction_block(Dim n, std::uint64_t k) {
    if (n.value() % 2 != 0 || k == 0) return std::nullopt;
    const int r = std::countr_zero(k);
    const std::uint64_t t = k >> r;
    if (t > static_cast<std::uint64_t>(n.value()) || n.value() % static_cast<int>(t) != 0) return std::nullopt;
    const int m = n.value() / static_cast<int>(t);
    if (r != m - 1) return std::nullopt;
    return static_cast<int>(t);
}

}  // namespace qpath::construct
