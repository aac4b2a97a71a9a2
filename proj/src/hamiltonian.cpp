#include "qpath/hamiltonian.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qpath/checker.hpp"

namespace qpath::construct {

void write_qham(std::ostream& os, int m, const CycleFamily& cycles) {
    const Dim dim(m);
    os << "QHAM v1 m=" << m << " cycles=" << cycles.size() << '\n';
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i) os << ' ';
            os << to_binary(c[i], dim);
        }
        os << '\n';
    }
}

namespace {

int parse_field(const std::string& token, const std::string& key, std::size_t line) {
    if (token.rfind(key + "=", 0) != 0) throw ParseError("line " + std::to_string(line) + ": expected " + key + "=");
    const std::string value = token.substr(key.size() + 1);
    if (value.empty() || value.size() > 9 || value.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("line " + std::to_string(line) + ": bad value for " + key);
    return std::stoi(value);
}

}  // namespace

std::vector<QhamSection> read_qham(std::istream& is) {
    std::vector<QhamSection> sections;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream header(line);
        std::string magic, version, mfield, cfield, extra;
        header >> magic >> version >> mfield >> cfield;
        if (magic != "QHAM" || version != "v1" || (header >> extra))
            throw ParseError("line " + std::to_string(line_no) + ": expected QHAM v1 header");
        const int m = parse_field(mfield, "m", line_no);
        const int count = parse_field(cfield, "cycles", line_no);
        if (m < 2 || m > kMaxDim || m % 2 != 0 || count != m / 2)
            throw ParseError("line " + std::to_string(line_no) + ": inconsistent header");
        if (m > 20) throw ParseError("line " + std::to_string(line_no) + ": cube too large for a cache");
        QhamSection section{m, {}};
        for (int c = 0; c < count; ++c) {
            if (!std::getline(is, line)) throw ParseError("unexpected end of cache after line " + std::to_string(line_no));
            ++line_no;
            std::vector<Vertex> cycle;
            cycle.reserve(std::size_t{1} << m);
            std::size_t pos = 0;
            while (pos <= line.size()) {
                const std::size_t end = std::min(line.find(' ', pos), line.size());
                const std::string_view token(line.data() + pos, end - pos);
                if (token.size() != static_cast<std::size_t>(m))
                    throw ParseError("line " + std::to_string(line_no) + ": bad vertex token");
                try {
                    cycle.push_back(from_binary(token));
                } catch (const PreconditionError& e) {
                    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
                }
                pos = end + 1;
            }
            section.cycles.push_back(std::move(cycle));
        }
        sections.push_back(std::move(section));
    }
    return sections;
}

HamiltonianProvider::HamiltonianProvider() : HamiltonianProvider(Options{}) {}

HamiltonianProvider::HamiltonianProvider(Options options) : options_(options) {}

bool HamiltonianProvider::load_cache(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return false;
    for (auto& section : read_qham(in)) insert(section.m, std::move(section.cycles));
    return true;
}

void HamiltonianProvider::save_cache(const std::filesystem::path& path) const {
    std::lock_guard lock(mutex_);
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open cache file for writing: " + path.string());
    for (const auto& [m, cycles] : cache_) write_qham(out, m, cycles);
    if (!out) throw std::runtime_error("failed writing cache file: " + path.string());
}

void HamiltonianProvider::insert(int m, CycleFamily cycles) {
    if (m < 2 || m % 2 != 0) throw PreconditionError("Hamiltonian decompositions need an even dimension >= 2");
    for (auto& c : cycles) canonicalize_cycle(c);
    std::sort(cycles.begin(), cycles.end());
    if (auto problem = checker::check_hamiltonian_decomposition(Dim(m), cycles)) {
        throw PreconditionError("Q_" + std::to_string(m) + " Hamiltonian family rejected: " + *problem);
    }
    std::lock_guard lock(mutex_);
    cache_[m] = std::move(cycles);
}

bool HamiltonianProvider::has(int m) const {
    std::lock_guard lock(mutex_);
    return m == 2 || cache_.contains(m);
}

CycleFamily HamiltonianProvider::cycles(int m) {
    if (m < 2 || m % 2 != 0) throw PreconditionError("Hamiltonian decompositions need an even dimension >= 2");
    if (m == 2) return {{0, 1, 3, 2}};
    if (m > options_.limit) {
        throw PreconditionError("Q_" + std::to_string(m) + " is beyond the Hamiltonian provider limit of " +
                                std::to_string(options_.limit));
    }
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    }
    if (!options_.search_on_miss) {
        throw PreconditionError("no cached Hamiltonian decomposition of Q_" + std::to_string(m));
    }
    auto result = oracle::search_hamiltonian_decomposition(Dim(m), options_.budget);
    if (result.status != oracle::SearchStatus::Found) {
        throw PreconditionError("Hamiltonian search for Q_" + std::to_string(m) + " ended with " +
                                oracle::to_string(result.status));
    }
    insert(m, std::move(result.cycles));
    std::lock_guard lock(mutex_);
    return cache_.at(m);
}

HamiltonianProvider& default_hamiltonian_provider() {
    static HamiltonianProvider provider;
    static const bool loaded = [] {
        const char* env = std::getenv("QPATH_CACHE");
        return env && *env && provider.load_cache(env);
    }();
    (void)loaded;
    return provider;
}

std::vector<CycleCover> hamiltonian_decomposition(Dim m, HamiltonianProvider& provider) {
    std::vector<CycleCover> out;
    for (auto& c : provider.cycles(m.value())) out.push_back(CycleCover{m, {std::move(c)}});
    return out;
}

std::vector<CycleCover> hamiltonian_decomposition(Dim m) {
    return hamiltonian_decomposition(m, default_hamiltonian_provider());
}

}  // namespace qpath::construct
