// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "qpath/checker.hpp"
#include "qpath/commands.hpp"
#include "qpath/constructions.hpp"
#include "qpath/format.hpp"
#include "qpath/hamiltonian.hpp"
#include "qpath/oracle.hpp"

using namespace qpath;
namespace fs = std::filesystem;

namespace {

constexpr double kAntipodalSeconds = 10.0;
constexpr double kSweepSeconds = 60.0;
constexpr double kScaleSeconds = 120.0;
constexpr double kScaleMemoryBytes = 4.0 * 1024 * 1024 * 1024;
constexpr int kMutations = 100;
constexpr std::uint64_t kMutationSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double peak_rss_bytes() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss) * 1024.0;  // kilobytes on Linux
}

std::string fmt(double x, int digits = 2) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(digits);
    s << x;
    return s.str();
}

bool valid_with_count(const Decomposition& d, std::uint64_t count, Outcome& o, const std::string& label) {
    const auto r = checker::validate_decomposition(d);
    o.require(r.ok(), label + ": " + r.describe(d.dim()));
    o.require(d.size() == count, label + ": " + std::to_string(d.size()) + " paths, expected " + std::to_string(count));
    return r.ok() && d.size() == count;
}

Outcome antipodal_suite() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (int nv = 1; nv <= 16; ++nv) {
        const Dim n(nv);
        const Decomposition d = construct::antipodal_decomposition(n);
        valid_with_count(d, std::uint64_t{1} << (nv - 1), o, "n=" + std::to_string(nv));
        for (std::size_t i = 0; i < d.size(); ++i) {
            const auto p = d.path(i);
            o.require(p.back() == antipode(p.front(), n), "n=" + std::to_string(nv) + ": endpoints not antipodal");
        }
    }
    const double s = seconds_since(t0);
    o.require(s < kAntipodalSeconds, "took " + fmt(s) + " s");
    if (o.pass) o.detail = "n=1..16, " + fmt(s) + " s";
    return o;
}

Outcome main_sweep() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    int cases = 0;
    std::string n9;
    for (int nv = 1; nv <= 13; nv += 2) {
        const Dim n(nv);
        for (int k = 1; k <= nv; ++k) {
            if (!checker::feasible(n, static_cast<std::uint64_t>(k))) continue;
            if (nv == 9) n9 += (n9.empty() ? "" : ",") + std::to_string(k);
            valid_with_count(construct::decompose(n, k), n.edge_count() / static_cast<std::uint64_t>(k), o,
                             "n=" + std::to_string(nv) + " k=" + std::to_string(k));
            ++cases;
        }
    }
    o.require(n9 == "1,2,3,4,6,8,9", "n=9 feasible set {" + n9 + "}");
    const double s = seconds_since(t0);
    o.require(s < kSweepSeconds, "took " + fmt(s) + " s");
    if (o.pass) o.detail = std::to_string(cases) + " (n,k) pairs, n=9 k in {" + n9 + "}, " + fmt(s) + " s";
    return o;
}

Outcome scale_point() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    {
        const Decomposition d = construct::decompose(Dim(21), 12);
        valid_with_count(d, 1'835'008, o, "n=21 k=12");
    }
    const double s = seconds_since(t0);
    const double rss = peak_rss_bytes();
    o.require(s < kScaleSeconds, "took " + fmt(s) + " s");
    o.require(rss < kScaleMemoryBytes, "peak RSS " + fmt(rss / (1 << 20), 0) + " MiB");
    if (o.pass) o.detail = "1835008 paths, " + fmt(s) + " s, peak RSS " + fmt(rss / (1 << 20), 0) + " MiB";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    int agree = 0;
    for (int nv = 1; nv <= 5; nv += 2) {
        const Dim n(nv);
        for (std::uint64_t k = 1; k <= n.edge_count(); ++k) {
            const std::string label = "n=" + std::to_string(nv) + " k=" + std::to_string(k);
            const bool constructive = checker::feasible(n, k);
            const auto search = oracle::brute_force_decomposition(n, static_cast<int>(k));
            if (constructive) {
                o.require(search.status == oracle::SearchStatus::Found, label + ": oracle says " + oracle::to_string(search.status));
                if (search.witness) valid_with_count(*search.witness, n.edge_count() / k, o, label + " witness");
                valid_with_count(construct::decompose(n, static_cast<int>(k)), n.edge_count() / k, o, label + " construction");
            } else {
                o.require(search.status == oracle::SearchStatus::None, label + ": oracle says " + oracle::to_string(search.status));
            }
            ++agree;
        }
    }
    valid_with_count(construct::special_q5_k4(), 20, o, "special Q5");
    if (o.pass) o.detail = std::to_string(agree) + " (n,k) verdicts agree; special Q5 has 20 paths";
    return o;
}

Outcome hamiltonian_base() {
    Outcome o;
    construct::HamiltonianProvider provider;
    for (int m : {2, 4, 6}) {
        const auto r = oracle::search_hamiltonian_decomposition(Dim(m));
        o.require(r.status == oracle::SearchStatus::Found, "m=" + std::to_string(m) + " search failed");
        o.require(r.cycles.size() == static_cast<std::size_t>(m / 2), "m=" + std::to_string(m) + " cycle count");
        for (const auto& c : r.cycles) o.require(c.size() == (std::size_t{1} << m), "cycle not spanning");
        o.require(!checker::check_hamiltonian_decomposition(Dim(m), r.cycles), "m=" + std::to_string(m) + " not a partition");
        if (m > 2) provider.insert(m, r.cycles);
    }
    const fs::path cache = fs::temp_directory_path() / "qpath_acceptance.qham";
    provider.save_cache(cache);
    construct::HamiltonianProvider::Options offline;
    offline.search_on_miss = false;
    construct::HamiltonianProvider reloaded(offline);
    o.require(reloaded.load_cache(cache), "cache did not load");
    for (int m : {4, 6}) o.require(reloaded.cycles(m) == provider.cycles(m), "cache round trip changed m=" + std::to_string(m));

    // a cycle with two vertices swapped must be refused on load
    auto tampered = provider.cycles(6);
    std::swap(tampered[1][10], tampered[1][11]);
    {
        std::ofstream out(cache, std::ios::trunc);
        construct::write_qham(out, 6, tampered);
    }
    construct::HamiltonianProvider strict(offline);
    bool refused = false;
    try {
        strict.load_cache(cache);
    } catch (const PreconditionError&) {
        refused = true;
    }
    o.require(refused, "tampered cache accepted");
    fs::remove(cache);
    if (o.pass) o.detail = "m=2,4,6 give 1,2,3 cycles; cache round-trips, tampering refused";
    return o;
}

Outcome even_construction() {
    Outcome o;
    struct Case { int n, t, k; std::uint64_t count; };
    for (const Case c : {Case{4, 1, 8, 4}, Case{6, 1, 32, 6}, Case{6, 3, 6, 32}}) {
        const Decomposition d = construct::even_n_decomposition(Dim(c.n), c.t);
        const std::string label = "n=" + std::to_string(c.n) + " t=" + std::to_string(c.t);
        o.require(d.length() == c.k, label + ": k=" + std::to_string(d.length()));
        valid_with_count(d, c.count, o, label);
    }
    if (o.pass) o.detail = "(4,1)->4, (6,1)->6, (6,3)->32 paths";
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return code;
}

Outcome mutation_robustness(const fs::path& dir) {
    Outcome o;
    const fs::path good = dir / "q5k4.qpath";
    o.require(run_cli({"decompose", "-n", "5", "-k", "4", "-o", good.string()}) == cli::kOk, "decompose failed");
    const std::string original = slurp(good);
    const std::size_t body_start = original.find('\n') + 1;

    std::mt19937_64 rng(kMutationSeed);
    int coordinate_flips = 0;
    for (int i = 0; i < kMutations; ++i) {
        std::string text = original;
        std::size_t at;
        int bit;
        if (i < kMutations / 2) {
            // flip a coordinate of a body vertex
            do at = body_start + rng() % (text.size() - body_start);
            while (text[at] != '0' && text[at] != '1');
            bit = 0;
        } else {
            at = rng() % text.size();
            bit = static_cast<int>(rng() % 8);
        }
        const bool digit_flip = at >= body_start && bit == 0 && (text[at] == '0' || text[at] == '1');
        coordinate_flips += digit_flip;
        text[at] = static_cast<char>(text[at] ^ (1 << bit));
        const fs::path mutant = dir / ("mutant" + std::to_string(i) + ".qpath");
        std::ofstream(mutant, std::ios::binary) << text;

        std::string out;
        const int code = run_cli({"verify", mutant.string()}, &out);
        const std::string where = "mutant " + std::to_string(i) + " (byte " + std::to_string(at) + ", bit " + std::to_string(bit) + ")";
        if (digit_flip) {
            // a single coordinate change moves a vertex to the other side, so a step breaks
            o.require(code == cli::kRejected && out.find("NON_ADJACENT_STEP") != std::string::npos,
                      where + ": expected NON_ADJACENT_STEP, got exit " + std::to_string(code) + " " + out);
        } else {
            o.require(code == cli::kParseError, where + ": expected parse error, got exit " + std::to_string(code) + " " + out);
        }
        fs::remove(mutant);
    }
    if (o.pass)
        o.detail = std::to_string(kMutations) + " mutants rejected (" + std::to_string(coordinate_flips) +
                   " NON_ADJACENT_STEP, " + std::to_string(kMutations - coordinate_flips) + " parse errors)";
    return o;
}

Outcome determinism(const fs::path& dir) {
    Outcome o;
    const std::vector<std::vector<std::string>> commands = {
        {"decompose", "-n", "13", "-k", "12", "-o", (dir / "OUT").string()},
        {"decompose", "-n", "9", "-k", "4", "--stats-only"},
        {"decompose", "-n", "6", "-k", "6", "--even", "-o", (dir / "OUT").string()},
        {"decompose", "-n", "7", "-k", "8"},
        {"verify", (dir / "keep.qpath").string()},
        {"feasible", "-n", "9", "-k", "6"},
        {"feasible", "-n", "4", "-k", "8", "--even"},
        {"ham", "-m", "6", "--cache", (dir / "OUT").string()},
        {"oracle", "-n", "4", "-k", "4", "-o", (dir / "OUT").string()},
        {"oracle", "-n", "3", "-k", "4"},
    };
    run_cli({"decompose", "-n", "11", "-k", "11", "-o", (dir / "keep.qpath").string()});
    for (const auto& cmd : commands) {
        std::string outs[2], errs[2], files[2];
        int codes[2];
        for (int r = 0; r < 2; ++r) {
            fs::remove(dir / "OUT");
            codes[r] = run_cli(cmd, &outs[r], &errs[r]);
            files[r] = fs::exists(dir / "OUT") ? slurp(dir / "OUT") : "";
        }
        o.require(codes[0] == codes[1] && outs[0] == outs[1] && errs[0] == errs[1] && files[0] == files[1],
                  "differs: qpath " + cmd[0] + " " + cmd[1]);
    }
    if (o.pass) o.detail = std::to_string(commands.size()) + " commands byte-identical across two runs";
    return o;
}

}  // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / "qpath_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 antipodal suite", antipodal_suite},
        {"2 main-theorem sweep", main_sweep},
        {"3 scale point n=21 k=12", scale_point},
        {"4 oracle equivalence", oracle_equivalence},
        {"5 Hamiltonian base cases", hamiltonian_base},
        {"6 even-n construction", even_construction},
        {"7 mutation robustness", [&] { return mutation_robustness(dir); }},
        {"8 determinism", [&] { return determinism(dir); }},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    fs::remove_all(dir);
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - static_cast<std::size_t>(failed) << "/"
              << criteria.size() << std::endl;
    return failed ? 1 : 0;
}
