#include <algorithm>
#include <chrono>

#include "qpath/checker.hpp"
#include "qpath/oracle.hpp"

namespace qpath::oracle {

SearchBudget::SearchBudget(std::uint64_t nodes, double seconds) : node_limit(nodes), time_limit_seconds(seconds) {
    if (nodes == 0 || !(seconds > 0)) throw PreconditionError("search budget must be positive");
}

const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::Found: return "EXISTS";
        case SearchStatus::None: return "NONE";
        case SearchStatus::BudgetExceeded: return "BUDGET-EXCEEDED";
    }
    return "UNKNOWN";
}

namespace {

void extend_paths(Dim n, int k, std::vector<Vertex>& current, std::vector<std::vector<Vertex>>& out) {
    if (static_cast<int>(current.size()) == k + 1) {
        if (!std::lexicographical_compare(current.rbegin(), current.rend(), current.begin(), current.end())) {
            out.push_back(current);
        }
        return;
    }
    const Vertex head = current.back();
    for (int i = 1; i <= n.value(); ++i) {
        const Vertex next = head ^ coordinate_bit(i);
        if (std::find(current.begin(), current.end(), next) != current.end()) continue;
        current.push_back(next);
        extend_paths(n, k, current, out);
        current.pop_back();
    }
}

// Every vertex of Q_n ends up as an endpoint of e(v) paths with e(v) = n mod 2
// (each interior visit uses two of its n edges), and the e(v) sum to twice
// the path count. A partial selection whose per-vertex lower bounds already
// exceed that sum cannot be completed.
class EndpointBound {
public:
    EndpointBound(Dim n, std::uint64_t path_count)
        : parity_(n.value() % 2), counts_(n.vertex_count(), 0),
          budget_(2 * path_count),
          total_(static_cast<std::uint64_t>(parity_) * n.vertex_count()) {}

    [[nodiscard]] bool feasible() const { return total_ <= budget_; }

    void add(Vertex v) {
        total_ -= lower_bound(counts_[v]);
        ++counts_[v];
        total_ += lower_bound(counts_[v]);
    }

    void remove(Vertex v) {
        total_ -= lower_bound(counts_[v]);
        --counts_[v];
        total_ += lower_bound(counts_[v]);
    }

private:
    // smallest admissible final count that is at least c
    [[nodiscard]] std::uint64_t lower_bound(std::uint32_t c) const {
        const std::uint32_t v = std::max<std::uint32_t>(c, static_cast<std::uint32_t>(parity_));
        return (v % 2 == static_cast<std::uint32_t>(parity_)) ? v : v + 1u;
    }

    int parity_;
    std::vector<std::uint32_t> counts_;
    std::uint64_t budget_;
    std::uint64_t total_;
};

// Dancing links over a 0/1 matrix with a header row of columns.
class ExactCover {
public:
    ExactCover(std::size_t columns, const std::vector<std::vector<std::size_t>>& rows,
               std::vector<std::pair<Vertex, Vertex>> endpoints, EndpointBound bound)
        : endpoints_(std::move(endpoints)), bound_(std::move(bound)) {
        const std::size_t header = columns;  // root node index
        const std::size_t total = columns + 1 + count_entries(rows);
        left_.resize(total);
        right_.resize(total);
        up_.resize(total);
        down_.resize(total);
        column_.resize(total);
        row_.resize(total);
        size_.assign(columns, 0);
        for (std::size_t c = 0; c <= columns; ++c) {
            left_[c] = c == 0 ? header : c - 1;
            right_[c] = c == header ? 0 : c + 1;
            up_[c] = down_[c] = c;
            column_[c] = c;
        }
        root_ = header;

        std::size_t next = columns + 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::size_t first = next;
            for (std::size_t j = 0; j < rows[r].size(); ++j) {
                const std::size_t c = rows[r][j];
                const std::size_t node = next++;
                column_[node] = c;
                row_[node] = r;
                up_[node] = up_[c];
                down_[node] = c;
                down_[up_[c]] = node;
                up_[c] = node;
                ++size_[c];
                left_[node] = j == 0 ? node : node - 1;
                right_[node] = first;
                if (j > 0) {
                    right_[node - 1] = node;
                    left_[first] = node;
                }
            }
        }
    }

    SearchStatus solve(const SearchBudget& budget, std::vector<std::size_t>& solution) {
        budget_ = budget;
        nodes_ = 0;
        start_ = std::chrono::steady_clock::now();
        exceeded_ = false;
        solution.clear();
        if (!bound_.feasible()) return SearchStatus::None;
        const bool found = search(solution);
        if (found) return SearchStatus::Found;
        return exceeded_ ? SearchStatus::BudgetExceeded : SearchStatus::None;
    }

    [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

private:
    static std::size_t count_entries(const std::vector<std::vector<std::size_t>>& rows) {
        std::size_t total = 0;
        for (const auto& r : rows) total += r.size();
        return total;
    }

    void cover(std::size_t c) {
        right_[left_[c]] = right_[c];
        left_[right_[c]] = left_[c];
        for (std::size_t i = down_[c]; i != c; i = down_[i]) {
            for (std::size_t j = right_[i]; j != i; j = right_[j]) {
                down_[up_[j]] = down_[j];
                up_[down_[j]] = up_[j];
                --size_[column_[j]];
            }
        }
    }

    void uncover(std::size_t c) {
        for (std::size_t i = up_[c]; i != c; i = up_[i]) {
            for (std::size_t j = left_[i]; j != i; j = left_[j]) {
                ++size_[column_[j]];
                down_[up_[j]] = j;
                up_[down_[j]] = j;
            }
        }
        right_[left_[c]] = c;
        left_[right_[c]] = c;
    }

    bool out_of_budget() {
        if (nodes_ >= budget_.node_limit) return true;
        if ((nodes_ & 0xfff) == 0) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
            if (elapsed.count() > budget_.time_limit_seconds) return true;
        }
        return false;
    }

    bool search(std::vector<std::size_t>& solution) {
        if (right_[root_] == root_) return true;
        // fewest remaining rows; ties go to the lowest column index
        std::size_t best = right_[root_];
        for (std::size_t c = right_[best]; c != root_; c = right_[c]) {
            if (size_[c] < size_[best]) best = c;
        }
        if (size_[best] == 0) return false;
        cover(best);
        for (std::size_t r = down_[best]; r != best; r = down_[r]) {
            if (out_of_budget()) {
                exceeded_ = true;
                break;
            }
            ++nodes_;
            const auto [a, b] = endpoints_[row_[r]];
            bound_.add(a);
            bound_.add(b);
            if (bound_.feasible()) {
                solution.push_back(row_[r]);
                for (std::size_t j = right_[r]; j != r; j = right_[j]) cover(column_[j]);
                if (search(solution)) return true;
                for (std::size_t j = left_[r]; j != r; j = left_[j]) uncover(column_[j]);
                solution.pop_back();
            }
            bound_.remove(a);
            bound_.remove(b);
            if (exceeded_) break;
        }
        uncover(best);
        return false;
    }

    std::vector<std::size_t> left_, right_, up_, down_, column_, row_, size_;
    std::vector<std::pair<Vertex, Vertex>> endpoints_;
    EndpointBound bound_;
    std::size_t root_ = 0;
    SearchBudget budget_;
    std::uint64_t nodes_ = 0;
    bool exceeded_ = false;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::vector<std::vector<Vertex>> enumerate_paths(Dim n, int k) {
    if (k < 1) throw PreconditionError("path length must be at least 1");
    std::vector<std::vector<Vertex>> out;
    if (static_cast<std::uint64_t>(k) + 1 > n.vertex_count()) return out;
    std::vector<Vertex> current;
    for (Vertex v = 0; v < n.vertex_count(); ++v) {
        current.assign(1, v);
        extend_paths(n, k, current, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DecompositionSearchResult brute_force_decomposition(Dim n, int k, const SearchBudget& budget) {
    if (n.value() > kMaxBruteForceDim) throw PreconditionError("brute-force search is limited to n <= 5");
    if (k < 1) throw PreconditionError("path length must be at least 1");

    DecompositionSearchResult result{SearchStatus::None, std::nullopt, 0, 0};
    // A partition needs the path length to divide the edge count.
    if (n.edge_count() % static_cast<std::uint64_t>(k) != 0) return result;

    const std::uint64_t path_count = n.edge_count() / static_cast<std::uint64_t>(k);
    EndpointBound bound(n, path_count);
    if (!bound.feasible()) return result;

    const auto paths = enumerate_paths(n, k);
    result.candidate_paths = paths.size();
    if (paths.empty()) return result;

    std::vector<std::vector<std::size_t>> rows;
    std::vector<std::pair<Vertex, Vertex>> endpoints;
    rows.reserve(paths.size());
    endpoints.reserve(paths.size());
    for (const auto& p : paths) {
        endpoints.emplace_back(p.front(), p.back());
        std::vector<std::size_t> cols;
        cols.reserve(p.size() - 1);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            cols.push_back(static_cast<std::size_t>(edge_index(Edge::between(p[i], p[i + 1]), n)));
        }
        rows.push_back(std::move(cols));
    }

    ExactCover solver(static_cast<std::size_t>(n.edge_count()), rows, std::move(endpoints), std::move(bound));
    std::vector<std::size_t> chosen;
    result.status = solver.solve(budget, chosen);
    result.nodes = solver.nodes();
    if (result.status != SearchStatus::Found) return result;

    std::sort(chosen.begin(), chosen.end());
    Decomposition d(n, k);
    d.reserve(chosen.size());
    for (std::size_t r : chosen) d.add_path(paths[r]);
    if (auto report = checker::validate_decomposition(d); !report.ok()) {
        throw InvariantError("exact-cover witness failed validation: " + report.describe(n));
    }
    result.witness = std::move(d);
    return result;
}

}  // namespace qpath::oracle
