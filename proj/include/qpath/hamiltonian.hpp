// hamiltonian.hpp
// Source of Hamiltonian decompositions of small even cubes Q_m (m/2
// edge-disjoint spanning cycles). Q_2 is built in; larger cubes come from a
// verified cache file or, failing that, from the backtracking search.
//
// Cache format ("QHAM v1"), one or more sections:
//   QHAM v1 m=<m> cycles=<m/2>
//   <2^m space-separated m-character binary vertices>   (one line per cycle)
#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "qpath/cube.hpp"
#include "qpath/oracle.hpp"

namespace qpath::construct {

using CycleFamily = std::vector<std::vector<Vertex>>;

struct QhamSection {
    int m;
    CycleFamily cycles;
};

void write_qham(std::ostream& os, int m, const CycleFamily& cycles);
/// Reads every section of a cache stream. Throws ParseError on malformed input.
[[nodiscard]] std::vector<QhamSection> read_qham(std::istream& is);

class HamiltonianProvider {
public:
    static constexpr int kDefaultLimit = 8;

    struct Options {
        int limit = kDefaultLimit;
        bool search_on_miss = true;
        oracle::SearchBudget budget{2'000'000'000ULL, 120.0};
    };

    HamiltonianProvider();
    explicit HamiltonianProvider(Options options);

    /// Loads and re-verifies every section of a cache file. A missing file is
    /// not an error (returns false); a malformed or invalid one is.
    bool load_cache(const std::filesystem::path& path);
    void save_cache(const std::filesystem::path& path) const;

    /// Verifies and stores a family, replacing any previous one for m.
    void insert(int m, CycleFamily cycles);
    [[nodiscard]] bool has(int m) const;

    /// Canonically oriented cycles of Q_m. Throws PreconditionError for odd m,
    /// m above the limit, or a cache miss when searching is disabled.
    [[nodiscard]] CycleFamily cycles(int m);

private:
    Options options_;
    mutable std::mutex mutex_;
    std::map<int, CycleFamily> cache_;
};

/// Process-wide provider with on-demand search; the cache file named by
/// QPATH_CACHE is loaded on first use when present.
[[nodiscard]] HamiltonianProvider& default_hamiltonian_provider();

/// The m/2 Hamiltonian cycles of Q_m as single-cycle covers.
[[nodiscard]] std::vector<CycleCover> hamiltonian_decomposition(Dim m, HamiltonianProvider& provider);
[[nodiscard]] std::vector<CycleCover> hamiltonian_decomposition(Dim m);

}  // namespace qpath::construct
