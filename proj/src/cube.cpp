#include "qpath/cube.hpp"

#include <algorithm>

namespace qpath {

Edge Edge::between(Vertex a, Vertex b) {
    const Vertex diff = a ^ b;
    if (!std::has_single_bit(diff)) throw PreconditionError("vertices are not adjacent");
    return Edge{a & ~diff, std::countr_zero(diff) + 1};
}

std::uint64_t edge_index(const Edge& e, Dim n) {
    const int d = e.dir - 1;
    const Vertex low = e.lo & ((Vertex{1} << d) - 1);
    const Vertex high = (e.lo >> (d + 1)) << d;
    return (static_cast<std::uint64_t>(d) << (n.value() - 1)) | high | low;
}

Edge edge_from_index(std::uint64_t index, Dim n) {
    const int d = static_cast<int>(index >> (n.value() - 1));
    const Vertex rest = index & ((Vertex{1} << (n.value() - 1)) - 1);
    const Vertex low = rest & ((Vertex{1} << d) - 1);
    const Vertex high = (rest >> d) << (d + 1);
    return Edge{high | low, d + 1};
}

std::size_t CycleCover::edge_count() const {
    std::size_t total = 0;
    for (const auto& c : cycles) total += c.size();
    return total;
}

std::vector<Edge> CycleCover::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) out.push_back(Edge::between(c[i], c[(i + 1) % c.size()]));
    }
    return out;
}

Decomposition::Decomposition(Dim n, int k) : n_(n), k_(k) {
    if (k < 1) throw PreconditionError("path length must be at least 1");
}

void Decomposition::add_path(std::span<const Vertex> p) {
    if (p.size() != stride()) throw PreconditionError("path has the wrong number of vertices");
    vertices_.insert(vertices_.end(), p.begin(), p.end());
}

void Decomposition::append(const Decomposition& other) {
    if (other.k_ != k_ || other.n_ != n_) throw PreconditionError("cannot append decompositions of different shape");
    vertices_.insert(vertices_.end(), other.vertices_.begin(), other.vertices_.end());
}

Matching dimension_matching(Dim n, int i) {
    if (i < 1 || i > n.value()) throw PreconditionError("coordinate out of range: " + std::to_string(i));
    Matching m{n, {}};
    m.edges.reserve(n.vertex_count() / 2);
    const Vertex bit = coordinate_bit(i);
    for (Vertex v = 0; v < n.vertex_count(); ++v) {
        if ((v & bit) == 0) m.edges.push_back(Edge{v, i});
    }
    return m;
}

Embedding::Embedding(Dim target, std::vector<int> block, Vertex fixed)
    : target_(target), block_(std::move(block)), fixed_(fixed) {
    Vertex block_mask = 0;
    for (int c : block_) {
        if (c < 1 || c > target.value()) throw PreconditionError("block coordinate out of range");
        if (block_mask & coordinate_bit(c)) throw PreconditionError("block coordinate repeated");
        block_mask |= coordinate_bit(c);
    }
    if (block_.empty()) throw PreconditionError("empty embedding block");
    if (!target.contains(fixed) || (fixed & block_mask) != 0)
        throw PreconditionError("fixed assignment overlaps the block or exceeds the target cube");
    bool contiguous = true;
    for (std::size_t j = 1; j < block_.size(); ++j) contiguous &= block_[j] == block_[j - 1] + 1;
    if (contiguous) shift_ = block_.front() - 1;
}

Vertex Embedding::apply(Vertex inner) const {
    if (shift_ >= 0) return fixed_ | (inner << shift_);
    Vertex out = fixed_;
    for (std::size_t j = 0; j < block_.size(); ++j) {
        if ((inner >> j) & 1) out |= coordinate_bit(block_[j]);
    }
    return out;
}

Edge Embedding::apply(const Edge& inner) const {
    if (inner.dir < 1 || inner.dir > inner_dim()) throw PreconditionError("edge direction outside the embedded block");
    return Edge{apply(inner.lo), block_[static_cast<std::size_t>(inner.dir - 1)]};
}

Walk Embedding::apply(std::span<const Vertex> inner) const {
    Walk out;
    out.reserve(inner.size());
    for (Vertex v : inner) out.push_back(apply(v));
    return out;
}

Matching Embedding::apply(const Matching& inner) const {
    if (inner.n.value() != inner_dim()) throw PreconditionError("block size does not match the embedded cube");
    Matching out{target_, {}};
    out.edges.reserve(inner.edges.size());
    for (const Edge& e : inner.edges) out.edges.push_back(apply(e));
    return out;
}

CycleCover Embedding::apply(const CycleCover& inner) const {
    if (inner.n.value() != inner_dim()) throw PreconditionError("block size does not match the embedded cube");
    CycleCover out{target_, {}};
    out.cycles.reserve(inner.cycles.size());
    for (const auto& c : inner.cycles) out.cycles.push_back(apply(std::span<const Vertex>(c)));
    return out;
}

std::string to_binary(Vertex v, Dim n) {
    std::string s(static_cast<std::size_t>(n.value()), '0');
    for (int i = 0; i < n.value(); ++i) {
        if ((v >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

Vertex from_binary(std::string_view s) {
    if (s.empty() || s.size() > static_cast<std::size_t>(kMaxDim)) throw PreconditionError("bad vertex token length");
    Vertex v = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            v |= Vertex{1} << i;
        } else if (s[i] != '0') {
            throw PreconditionError("bad character in vertex token");
        }
    }
    return v;
}

void canonicalize_cycle(std::vector<Vertex>& cycle) {
    if (cycle.size() < 3) return;
    const auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());
    if (cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
}

}  // namespace qpath
