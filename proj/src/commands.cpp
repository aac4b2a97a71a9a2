#include "qpath/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>

#include "qpath/checker.hpp"
#include "qpath/constructions.hpp"
#include "qpath/format.hpp"
#include "qpath/hamiltonian.hpp"
#include "qpath/oracle.hpp"

namespace qpath::cli {

namespace {

// A failure that already knows its exit code and message.
struct CommandError {
    int code;
    std::string message;
};

std::filesystem::path cache_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("QPATH_CACHE"); env && *env) return env;
    return "qham.cache";
}

std::unique_ptr<construct::HamiltonianProvider> provider_for(const std::string& cache_flag,
                                                             const oracle::SearchBudget& budget) {
    construct::HamiltonianProvider::Options options;
    options.budget = budget;
    auto provider = std::make_unique<construct::HamiltonianProvider>(options);
    try {
        provider->load_cache(cache_path(cache_flag));
    } catch (const ParseError& e) {
        throw CommandError{kParseError, "cache " + cache_path(cache_flag).string() + ": " + e.what()};
    } catch (const PreconditionError& e) {
        throw CommandError{kParseError, "cache " + cache_path(cache_flag).string() + ": " + e.what()};
    }
    return provider;
}

void write_output(const std::string& path, const Decomposition& d, std::ostream& out) {
    if (path.empty() || path == "-") {
        format::write_decomposition(out, d);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw CommandError{kInternalError, "cannot open " + path + " for writing"};
    format::write_decomposition(file, d);
    file.close();
    if (!file) throw CommandError{kInternalError, "failed writing " + path};
}

struct DecomposeArgs {
    int n = 0;
    int k = 0;
    std::string output;
    std::string cache;
    bool even = false;
    bool stats_only = false;
};

int cmd_decompose(const DecomposeArgs& a, std::ostream& out, std::ostream& err) {
    const Dim n(a.n);
    auto provider = provider_for(a.cache, {});
    Decomposition d(n, 1);
    if (a.even) {
        if (a.n % 2 != 0) throw CommandError{kInfeasible, "--even needs even n"};
        if (a.k < 1) throw CommandError{kInfeasible, "INFEASIBLE k ≥ 1 violated"};
        const auto t = construct::even_construction_block(n, static_cast<std::uint64_t>(a.k));
        if (!t) {
            const std::string reason = checker::infeasibility_reason_even(n, static_cast<std::uint64_t>(a.k));
            if (!reason.empty()) throw CommandError{kInfeasible, "INFEASIBLE " + reason};
            throw CommandError{kInfeasible, "k is not of the form t·2^(n/t − 1) with t an odd divisor of n; "
                                            "no construction available"};
        }
        d = construct::even_n_decomposition(n, *t, *provider);
    } else {
        if (a.n % 2 == 0) throw CommandError{kInfeasible, "n is even; pass --even for the even-n construction"};
        d = construct::decompose(n, a.k, *provider);
    }

    const auto report = checker::validate_decomposition(d);
    if (!report.ok()) throw CommandError{kInternalError, "construction failed self-check: " + report.describe(n)};

    if (a.stats_only) {
        out << "n=" << a.n << " k=" << a.k << " count=" << d.size() << " verified\n";
    } else {
        write_output(a.output, d, out);
        if (!a.output.empty() && a.output != "-") err << "wrote " << d.size() << " paths to " << a.output << '\n';
    }
    return kOk;
}

struct VerifyArgs {
    int n = 0;
    int k = 0;
    std::string input;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const Decomposition d = format::read_file(a.input);
    const int n = d.dim().value();
    if (a.n != 0 && a.n != n) {
        out << "REJECTED header declares n=" << n << ", expected n=" << a.n << '\n';
        return kRejected;
    }
    if (a.k != 0 && a.k != d.length()) {
        out << "REJECTED header declares k=" << d.length() << ", expected k=" << a.k << '\n';
        return kRejected;
    }
    const auto report = checker::validate_decomposition(d);
    if (!report.ok()) {
        out << "REJECTED " << report.describe(d.dim()) << '\n';
        return kRejected;
    }
    out << "OK n=" << n << " k=" << d.length() << " count=" << d.size() << '\n';
    return kOk;
}

int cmd_feasible(std::int64_t n_arg, std::int64_t k_arg, bool even, std::ostream& out) {
    if (k_arg < 1) {
        out << "INFEASIBLE k ≥ 1 violated\n";
        return kInfeasible;
    }
    const Dim n(static_cast<int>(n_arg));
    const auto k = static_cast<std::uint64_t>(k_arg);
    if (even) {
        if (n.value() % 2 != 0) throw CommandError{kInfeasible, "--even needs even n"};
        const std::string reason = checker::infeasibility_reason_even(n, k);
        if (!reason.empty()) {
            out << "INFEASIBLE " << reason << '\n';
            return kInfeasible;
        }
        out << "CONJECTURED-FEASIBLE\n";
        return kOk;
    }
    if (n.value() % 2 == 0) throw CommandError{kInfeasible, "n is even; pass --even for the conjectured criterion"};
    const std::string reason = checker::infeasibility_reason(n, k);
    if (!reason.empty()) {
        out << "INFEASIBLE " << reason << '\n';
        return kInfeasible;
    }
    out << "FEASIBLE\n";
    return kOk;
}

int cmd_ham(int m, const std::string& cache, const oracle::SearchBudget& budget, std::ostream& out,
            std::ostream& err) {
    construct::HamiltonianProvider::Options options;
    options.budget = budget;
    options.limit = oracle::kMaxHamiltonianSearchDim;
    construct::HamiltonianProvider provider(options);
    const auto path = cache_path(cache);
    try {
        provider.load_cache(path);
    } catch (const ParseError& e) {
        throw CommandError{kParseError, "cache " + path.string() + ": " + e.what()};
    }
    const bool cached = provider.has(m);
    const auto cycles = provider.cycles(m);
    provider.save_cache(path);
    out << "Q_" << m << ": " << cycles.size() << " Hamiltonian cycles of length " << (std::uint64_t{1} << m)
        << (cached ? " (cached)" : " (searched)") << '\n';
    err << "cache written to " << path.string() << '\n';
    return kOk;
}

int cmd_oracle(int n, int k, const oracle::SearchBudget& budget, const std::string& output, std::ostream& out,
               std::ostream& err) {
    const auto result = oracle::brute_force_decomposition(Dim(n), k, budget);
    out << oracle::to_string(result.status) << '\n';
    err << "nodes=" << result.nodes << " candidates=" << result.candidate_paths << '\n';
    if (!output.empty() && result.witness) write_output(output, *result.witness, out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Path decompositions of hypercubes", "qpath"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    auto* decompose = app.add_subcommand("decompose", "Construct and self-verify a decomposition of Q_n into length-k paths");
    decompose->add_option("-n", dec.n, "Dimension")->required()->check(CLI::Range(1, kMaxDim));
    decompose->add_option("-k", dec.k, "Path length")->required();
    decompose->add_option("-o,--output", dec.output, "Output file (default: standard output)");
    decompose->add_flag("--even", dec.even, "Use the even-n construction");
    decompose->add_flag("--stats-only", dec.stats_only, "Verify and print counts without writing the certificate");
    decompose->add_option("--cache", dec.cache, "Hamiltonian cache file");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Check a certificate file");
    verify->add_option("input", ver.input, "Certificate file")->required();
    verify->add_option("-n", ver.n, "Expected dimension");
    verify->add_option("-k", ver.k, "Expected path length");

    std::int64_t feas_n = 0;
    std::int64_t feas_k = 0;
    bool feas_even = false;
    auto* feasible = app.add_subcommand("feasible", "Report whether length-k paths can decompose Q_n");
    feasible->add_option("-n", feas_n, "Dimension")->required()->check(CLI::Range(1, kMaxDim));
    feasible->add_option("-k", feas_k, "Path length")->required();
    feasible->add_flag("--even", feas_even, "Use the conjectured even-n criterion");

    int ham_m = 0;
    std::string ham_cache;
    auto* ham = app.add_subcommand("ham", "Find or load a Hamiltonian decomposition of Q_m and write the cache");
    ham->add_option("-m", ham_m, "Even dimension")->required()->check(CLI::Range(2, oracle::kMaxHamiltonianSearchDim));
    ham->add_option("--cache", ham_cache, "Cache file");

    int or_n = 0;
    int or_k = 0;
    std::string or_output;
    auto* orc = app.add_subcommand("oracle", "Exhaustive exact-cover search on a small cube");
    orc->add_option("-n", or_n, "Dimension")->required()->check(CLI::Range(1, oracle::kMaxBruteForceDim));
    orc->add_option("-k", or_k, "Path length")->required();
    orc->add_option("-o,--output", or_output, "Write the witness here when one is found");

    std::uint64_t max_nodes = 0;
    double max_seconds = 0;
    for (auto* sub : {ham, orc}) {
        sub->add_option("--max-nodes", max_nodes, "Search node budget");
        sub->add_option("--max-seconds", max_seconds, "Search time budget");
    }

    std::vector<const char*> argv{"qpath"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInfeasible;
    }

    auto budget_for = [&](oracle::SearchBudget base) {
        if (max_nodes) base.node_limit = max_nodes;
        if (max_seconds > 0) base.time_limit_seconds = max_seconds;
        return oracle::SearchBudget(base.node_limit, base.time_limit_seconds);
    };

    try {
        if (*decompose) return cmd_decompose(dec, out, err);
        if (*verify) return cmd_verify(ver, out);
        if (*feasible) return cmd_feasible(feas_n, feas_k, feas_even, out);
        if (*ham) {
            construct::HamiltonianProvider::Options defaults;
            return cmd_ham(ham_m, ham_cache, budget_for(defaults.budget), out, err);
        }
        if (*orc) return cmd_oracle(or_n, or_k, budget_for({}), or_output, out, err);
    } catch (const CommandError& e) {
        err << e.message << '\n';
        return e.code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const construct::InfeasibleError& e) {
        err << e.what() << '\n';
        return kInfeasible;
    } catch (const PreconditionError& e) {
        err << e.what() << '\n';
        return kInfeasible;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}

}  // namespace qpath::cli
