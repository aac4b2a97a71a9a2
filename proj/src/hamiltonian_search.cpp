#include <algorithm>
#include <array>
#include <bit>
#include <chrono>

#include "qpath/checker.hpp"
#include "qpath/oracle.hpp"

namespace qpath::oracle {

namespace {

// Union-find with rollback for the leftover (residual) 2-factor.
class RollbackUnionFind {
public:
    explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }

    [[nodiscard]] std::size_t find(std::size_t x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    [[nodiscard]] std::size_t component_size(std::size_t x) const { return size_[find(x)]; }

    /// Returns false without merging if a and b are already connected.
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
        return true;
    }

    [[nodiscard]] std::size_t mark() const { return history_.size(); }

    void rollback(std::size_t to) {
        while (history_.size() > to) {
            const std::size_t b = history_.back();
            history_.pop_back();
            const std::size_t a = parent_[b];
            size_[a] -= size_[b];
            parent_[b] = b;
        }
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::vector<std::size_t> history_;
};

class HamiltonianSearch {
public:
    HamiltonianSearch(Dim m, const SearchBudget& budget)
        : m_(m.value()),
          vertex_count_(static_cast<std::size_t>(m.vertex_count())),
          full_mask_(static_cast<std::uint32_t>((1u << m_) - 1)),
          budget_(budget),
          used_(vertex_count_, 0),
          start_time_(std::chrono::steady_clock::now()) {}

    SearchStatus run() {
        if (solve_level(0)) return SearchStatus::Found;
        return exceeded_ ? SearchStatus::BudgetExceeded : SearchStatus::None;
    }

    [[nodiscard]] std::vector<std::vector<Vertex>> cycles() const { return cycles_; }
    [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

private:
    [[nodiscard]] int levels() const { return m_ / 2; }

    [[nodiscard]] std::uint32_t available(std::size_t v) const { return full_mask_ & ~used_[v]; }

    void set_cycle_used(const std::vector<Vertex>& cycle, bool on) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const Vertex a = cycle[i];
            const Vertex b = cycle[(i + 1) % cycle.size()];
            const auto bit = static_cast<std::uint32_t>(a ^ b);
            if (on) {
                used_[a] |= bit;
                used_[b] |= bit;
            } else {
                used_[a] &= ~bit;
                used_[b] &= ~bit;
            }
        }
    }

    bool solve_level(int level) {
        if (level == levels() - 1) return take_leftover_cycle();
        State st(vertex_count_, level == levels() - 2);
        for (std::size_t v = 0; v < vertex_count_; ++v) st.free[v] = std::popcount(available(v));
        st.path.reserve(vertex_count_);
        st.path.push_back(0);
        st.visited[0] = 1;
        if (level == 0 && m_ >= 2) {
            // 0 -> e1 -> e1+e2; the hypercube's symmetry makes this choice free.
            if (!advance(st, 1)) return false;
            const bool ok = advance(st, 3) && extend(st, level);
            return ok;
        }
        return extend(st, level);
    }

    // The last level has degree 2 left everywhere; it must be one cycle.
    bool take_leftover_cycle() {
        std::vector<Vertex> cycle;
        cycle.reserve(vertex_count_);
        Vertex prev = 0;
        Vertex cur = 0;
        do {
            cycle.push_back(cur);
            const std::uint32_t av = available(cur);
            if (std::popcount(av) != 2) return false;
            const Vertex a = cur ^ std::bit_floor(av);
            const Vertex b = cur ^ (av & (~av + 1));
            Vertex next = (cycle.size() == 1) ? std::min(a, b) : (a == prev ? b : a);
            prev = cur;
            cur = next;
            if (cycle.size() > vertex_count_) return false;
        } while (cur != 0);
        if (cycle.size() != vertex_count_) return false;
        cycles_.push_back(std::move(cycle));
        return true;
    }

    struct State {
        State(std::size_t n, bool track_residual)
            : visited(n, 0), free(n, 0), finalized(n, 0), residual(track_residual), uf(track_residual ? n : 1) {}
        std::vector<Vertex> path;
        std::vector<std::uint8_t> visited;
        std::vector<int> free;  // available edges to unvisited, head, or start
        std::vector<std::uint8_t> finalized;
        bool residual;
        RollbackUnionFind uf;
    };

    bool out_of_budget() {
        if (exceeded_) return true;
        if (nodes_ >= budget_.node_limit) {
            exceeded_ = true;
        } else if ((nodes_ & 0xfff) == 0) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_time_;
            exceeded_ = elapsed.count() > budget_.time_limit_seconds;
        }
        return exceeded_;
    }

    // Fixes the residual edges of v, whose two cycle edges go to a and b.
    bool finalize(State& st, Vertex v, Vertex a, Vertex b) {
        st.finalized[v] = 1;
        if (!st.residual) return true;
        std::uint32_t rest = available(v) & ~static_cast<std::uint32_t>((v ^ a) | (v ^ b));
        while (rest) {
            const std::uint32_t bit = rest & (~rest + 1);
            rest &= rest - 1;
            const Vertex y = v ^ bit;
            if (st.finalized[y]) continue;  // added when y was finalized
            // a leftover cycle may only close once it spans every vertex
            if (!st.uf.unite(v, y) && st.uf.component_size(v) != vertex_count_) return false;
        }
        return true;
    }

    // Moves the head to `next`: the old head (unless it is the start) becomes interior.
    bool advance(State& st, Vertex next) {
        const Vertex head = st.path.back();
        const bool head_is_start = st.path.size() == 1;
        st.path.push_back(next);
        st.visited[next] = 1;
        bool ok = true;
        if (!head_is_start) {
            std::uint32_t av = available(head);
            while (av) {
                const std::uint32_t bit = av & (~av + 1);
                av &= av - 1;
                const Vertex x = head ^ bit;
                if (x == next) continue;
                --st.free[x];
                if (x == 0) {
                    ok &= st.free[x] >= 1;
                } else if (!st.visited[x]) {
                    ok &= st.free[x] >= 2;
                }
            }
            const Vertex before = st.path[st.path.size() - 3];
            ok = ok && finalize(st, head, before, next);
        }
        return ok;
    }

    void retreat(State& st, std::size_t uf_mark) {
        const Vertex next = st.path.back();
        st.path.pop_back();
        st.visited[next] = 0;
        const Vertex head = st.path.back();
        if (st.path.size() > 1) {
            std::uint32_t av = available(head);
            while (av) {
                const std::uint32_t bit = av & (~av + 1);
                av &= av - 1;
                const Vertex x = head ^ bit;
                if (x != next) ++st.free[x];
            }
            st.finalized[head] = 0;
        }
        if (st.residual) st.uf.rollback(uf_mark);
    }

    bool extend(State& st, int level) {
        if (out_of_budget()) return false;
        const Vertex head = st.path.back();
        if (st.path.size() == vertex_count_) {
            const auto closing = static_cast<std::uint32_t>(head ^ 0);
            if (!std::has_single_bit(closing) || (available(head) & closing) == 0) return false;
            // orientation: the first step uses the lower coordinate of the two at vertex 0
            if (closing < static_cast<std::uint32_t>(st.path[1])) return false;
            return close_cycle(st, level);
        }

        std::array<std::pair<int, Vertex>, 32> candidates{};
        int count = 0;
        std::uint32_t av = available(head);
        while (av) {
            const std::uint32_t bit = av & (~av + 1);
            av &= av - 1;
            const Vertex x = head ^ bit;
            if (st.visited[x]) continue;
            candidates[static_cast<std::size_t>(count++)] = {st.free[x], x};
        }
        std::sort(candidates.begin(), candidates.begin() + count);
        for (int c = 0; c < count; ++c) {
            const Vertex x = candidates[static_cast<std::size_t>(c)].second;
            ++nodes_;
            const std::size_t mark = st.residual ? st.uf.mark() : 0;
            if (advance(st, x) && extend(st, level)) return true;
            retreat(st, mark);
            if (exceeded_) return false;
        }
        return false;
    }

    bool close_cycle(State& st, int level) {
        const std::size_t mark = st.residual ? st.uf.mark() : 0;
        const Vertex last = st.path.back();
        const Vertex before_last = st.path[st.path.size() - 2];
        const bool ok = finalize(st, last, before_last, 0) && finalize(st, 0, st.path[1], last);
        if (ok) {
            cycles_.push_back(st.path);
            set_cycle_used(st.path, true);
            if (solve_level(level + 1)) return true;
            set_cycle_used(st.path, false);
            cycles_.pop_back();
        }
        st.finalized[last] = 0;
        st.finalized[0] = 0;
        if (st.residual) st.uf.rollback(mark);
        return false;
    }

    int m_;
    std::size_t vertex_count_;
    std::uint32_t full_mask_;
    SearchBudget budget_;
    std::vector<std::uint32_t> used_;
    std::vector<std::vector<Vertex>> cycles_;
    std::uint64_t nodes_ = 0;
    bool exceeded_ = false;
    std::chrono::steady_clock::time_point start_time_;
};

}  // namespace

HamiltonianSearchResult search_hamiltonian_decomposition(Dim m, const SearchBudget& budget) {
    if (m.value() % 2 != 0) throw PreconditionError("Hamiltonian decomposition needs an even dimension");
    if (m.value() > kMaxHamiltonianSearchDim) throw PreconditionError("Hamiltonian search is limited to m <= 8");

    HamiltonianSearch search(m, budget);
    HamiltonianSearchResult result{search.run(), {}, 0};
    result.nodes = search.nodes();
    if (result.status != SearchStatus::Found) return result;
    result.cycles = search.cycles();
    for (auto& c : result.cycles) canonicalize_cycle(c);
    if (auto problem = checker::check_hamiltonian_decomposition(m, result.cycles)) {
        throw InvariantError("Hamiltonian search produced an invalid family: " + *problem);
    }
    return result;
}

}  // namespace qpath::oracle
