#include "qpath/checker.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qpath::checker {

const char* to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::NonAdjacentStep: return "NON_ADJACENT_STEP";
        case FailureKind::RepeatedVertex: return "REPEATED_VERTEX";
        case FailureKind::WrongLength: return "WRONG_LENGTH";
        case FailureKind::VertexOutOfRange: return "VERTEX_OUT_OF_RANGE";
        case FailureKind::DuplicateEdge: return "DUPLICATE_EDGE";
        case FailureKind::MissingEdge: return "MISSING_EDGE";
        case FailureKind::WrongPathCount: return "WRONG_PATH_COUNT";
    }
    return "UNKNOWN";
}

std::string ValidationReport::describe(Dim n) const {
    if (ok()) return "ok";
    const Failure& f = *failure;
    std::ostringstream os;
    os << to_string(f.kind);
    switch (f.kind) {
        case FailureKind::NonAdjacentStep:
            os << " path " << f.path << " step " << f.position;
            break;
        case FailureKind::RepeatedVertex:
        case FailureKind::VertexOutOfRange:
            os << " path " << f.path << " vertex " << f.position;
            break;
        case FailureKind::WrongLength:
            os << " path " << f.path << " expected " << f.expected << " actual " << f.actual;
            break;
        case FailureKind::DuplicateEdge:
            os << " path " << f.path << " edge " << to_binary(f.edge.lo, n) << "-" << to_binary(f.edge.hi(), n);
            break;
        case FailureKind::MissingEdge:
            os << " edge " << to_binary(f.edge.lo, n) << "-" << to_binary(f.edge.hi(), n);
            break;
        case FailureKind::WrongPathCount:
            os << " expected " << f.expected << " actual " << f.actual;
            break;
    }
    return os.str();
}

namespace {

ValidationReport fail(Failure f) { return ValidationReport{f}; }

ValidationReport check_walk_shape(std::span<const Vertex> w, Dim n, int k, std::size_t path_index) {
    if (w.size() != static_cast<std::size_t>(k) + 1) {
        return fail({.kind = FailureKind::WrongLength,
                     .path = path_index,
                     .expected = static_cast<std::uint64_t>(k),
                     .actual = w.empty() ? 0 : w.size() - 1});
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!n.contains(w[i])) return fail({.kind = FailureKind::VertexOutOfRange, .path = path_index, .position = i});
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (std::popcount(w[i] ^ w[i + 1]) != 1)
            return fail({.kind = FailureKind::NonAdjacentStep, .path = path_index, .position = i});
    }
    return {};
}

ValidationReport check_distinct(std::span<const Vertex> p, std::size_t path_index) {
    if (p.size() <= 48) {
        for (std::size_t j = 1; j < p.size(); ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                if (p[i] == p[j]) return fail({.kind = FailureKind::RepeatedVertex, .path = path_index, .position = j});
            }
        }
        return {};
    }
    std::vector<std::pair<Vertex, std::size_t>> sorted;
    sorted.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) sorted.emplace_back(p[i], i);
    std::sort(sorted.begin(), sorted.end());
    std::optional<std::size_t> first_repeat;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].first == sorted[i - 1].first) {
            // the later occurrence of the pair is the one a left-to-right scan hits
            const std::size_t pos = sorted[i].second;
            if (!first_repeat || pos < *first_repeat) first_repeat = pos;
        }
    }
    if (first_repeat) return fail({.kind = FailureKind::RepeatedVertex, .path = path_index, .position = *first_repeat});
    return {};
}

ValidationReport validate_path_at(std::span<const Vertex> p, Dim n, int k, std::size_t path_index) {
    if (auto r = check_walk_shape(p, n, k, path_index); !r.ok()) return r;
    return check_distinct(p, path_index);
}

class EdgeTable {
public:
    explicit EdgeTable(Dim n) : n_(n), words_((n.edge_count() + 63) / 64, 0) {}

    /// Returns false if the slot was already set.
    bool mark(Vertex a, Vertex b) {
        const Vertex diff = a ^ b;
        const int d = std::countr_zero(diff);
        const Vertex lo = a & ~diff;
        const Vertex low = lo & (diff - 1);
        const Vertex high = (lo >> (d + 1)) << d;
        const std::uint64_t slot = (static_cast<std::uint64_t>(d) << (n_.value() - 1)) | high | low;
        std::uint64_t& word = words_[slot >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (slot & 63);
        if (word & bit) return false;
        word |= bit;
        return true;
    }

    [[nodiscard]] std::optional<std::uint64_t> first_unset() const {
        const std::uint64_t total = n_.edge_count();
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t inv = ~words_[w];
            if (inv == 0) continue;
            const std::uint64_t slot = w * 64 + static_cast<std::uint64_t>(std::countr_zero(inv));
            if (slot < total) return slot;
            return std::nullopt;
        }
        return std::nullopt;
    }

private:
    Dim n_;
    std::vector<std::uint64_t> words_;
};

// Edge slot -> canonical edge, kept local so the checker does not lean on
// the cube helpers for its accounting.
Edge slot_to_edge(std::uint64_t slot, Dim n) {
    const int d = static_cast<int>(slot >> (n.value() - 1));
    const Vertex rest = slot & ((Vertex{1} << (n.value() - 1)) - 1);
    const Vertex low = rest & ((Vertex{1} << d) - 1);
    const Vertex high = (rest >> d) << (d + 1);
    return Edge{high | low, d + 1};
}

}  // namespace

ValidationReport validate_path(std::span<const Vertex> p, Dim n, int k) { return validate_path_at(p, n, k, 0); }

ValidationReport validate_walk(std::span<const Vertex> w, Dim n, int k) { return check_walk_shape(w, n, k, 0); }

ValidationReport validate_decomposition(const Decomposition& d) {
    const Dim n = d.dim();
    const int k = d.length();
    EdgeTable table(n);
    const std::size_t count = d.size();
    for (std::size_t i = 0; i < count; ++i) {
        const auto p = d.path(i);
        if (auto r = validate_path_at(p, n, k, i); !r.ok()) return r;
        for (std::size_t j = 0; j + 1 < p.size(); ++j) {
            if (!table.mark(p[j], p[j + 1])) {
                return fail({.kind = FailureKind::DuplicateEdge, .path = i, .position = j,
                             .edge = Edge{p[j] & p[j + 1], std::countr_zero(p[j] ^ p[j + 1]) + 1}});
            }
        }
    }
    if (auto slot = table.first_unset()) {
        return fail({.kind = FailureKind::MissingEdge, .edge = slot_to_edge(*slot, n)});
    }
    const std::uint64_t expected = n.edge_count() / static_cast<std::uint64_t>(k);
    if (n.edge_count() % static_cast<std::uint64_t>(k) != 0 || count != expected) {
        return fail({.kind = FailureKind::WrongPathCount, .expected = expected, .actual = count});
    }
    return {};
}

std::optional<std::string> check_hamiltonian_decomposition(Dim m, const std::vector<std::vector<Vertex>>& cycles) {
    if (m.value() % 2 != 0) return "dimension is odd";
    if (cycles.size() != static_cast<std::size_t>(m.value() / 2)) return "wrong number of cycles";
    EdgeTable table(m);
    const std::uint64_t vertices = m.vertex_count();
    for (std::size_t c = 0; c < cycles.size(); ++c) {
        const auto& cyc = cycles[c];
        const std::string where = "cycle " + std::to_string(c) + ": ";
        if (cyc.size() != vertices) return where + "not spanning";
        std::vector<bool> seen(vertices, false);
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Vertex a = cyc[i];
            const Vertex b = cyc[(i + 1) % cyc.size()];
            if (!m.contains(a)) return where + "vertex out of range";
            if (seen[a]) return where + "repeated vertex";
            seen[a] = true;
            if (std::popcount(a ^ b) != 1) return where + "non-adjacent step";
            if (!table.mark(a, b)) return where + "edge shared with an earlier cycle";
        }
    }
    if (table.first_unset()) return "cycles do not cover every edge";
    return std::nullopt;
}

namespace {

struct TwoAdic {
    int exponent;
    std::uint64_t odd;
};

TwoAdic split_two_adic(std::uint64_t x) {
    const int e = std::countr_zero(x);
    return {e, x >> e};
}

}  // namespace

bool divides_edge_count(Dim n, std::uint64_t k) {
    if (k == 0) return false;
    const auto kk = split_two_adic(k);
    const auto nn = split_two_adic(static_cast<std::uint64_t>(n.value()));
    return kk.exponent <= nn.exponent + n.value() - 1 && nn.odd % kk.odd == 0;
}

std::string infeasibility_reason(Dim n, std::uint64_t k) {
    if (n.value() % 2 == 0) throw PreconditionError("odd-n criterion requires odd n; use feasible_even");
    if (k == 0) return "k ≥ 1 violated";
    if (!divides_edge_count(n, k)) return "k | n·2^(n−1) violated";
    if (k > static_cast<std::uint64_t>(n.value())) return "k ≤ n violated";
    return {};
}

std::string infeasibility_reason_even(Dim n, std::uint64_t k) {
    if (n.value() % 2 != 0) throw PreconditionError("even-n criterion requires even n; use feasible");
    if (k == 0) return "k ≥ 1 violated";
    if (!divides_edge_count(n, k)) return "k | n·2^(n−1) violated";
    if (k >= n.vertex_count()) return "k < 2^n violated";
    return {};
}

bool feasible(Dim n, std::uint64_t k) { return infeasibility_reason(n, k).empty(); }

bool feasible_even(Dim n, std::uint64_t k) { return infeasibility_reason_even(n, k).empty(); }

}  // namespace qpath::checker
