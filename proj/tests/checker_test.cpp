#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "qpath/checker.hpp"

using namespace qpath;
using checker::FailureKind;

namespace {

__extension__ typedef unsigned __int128 u128;

std::vector<Vertex> path_of(std::initializer_list<const char*> tokens) {
    std::vector<Vertex> p;
    for (const char* t : tokens) p.push_back(from_binary(t));
    return p;
}

// Hand-listed antipodal paths of Q_3 from the even vertices.
Decomposition q3_antipodal() {
    Decomposition d(Dim(3), 3);
    d.add_path(path_of({"000", "100", "110", "111"}));
    d.add_path(path_of({"011", "111", "101", "100"}));
    d.add_path(path_of({"101", "001", "011", "010"}));
    d.add_path(path_of({"110", "010", "000", "001"}));
    return d;
}

FailureKind kind_of(const checker::ValidationReport& r) {
    EXPECT_FALSE(r.ok());
    return r.failure ? r.failure->kind : FailureKind::WrongPathCount;
}

// Set-based reference: slow, obviously correct.
bool naive_valid(const Decomposition& d) {
    const int n = d.dim().value();
    const int k = d.length();
    std::set<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto p = d.path(i);
        if (p.size() != static_cast<std::size_t>(k) + 1) return false;
        std::set<Vertex> seen(p.begin(), p.end());
        if (seen.size() != p.size()) return false;
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p[j] >> n) return false;
            if (j == 0) continue;
            const Vertex x = p[j - 1] ^ p[j];
            if (x == 0 || (x & (x - 1))) return false;
            if (!edges.emplace(std::min(p[j - 1], p[j]), std::max(p[j - 1], p[j])).second) return false;
        }
    }
    return edges.size() == static_cast<std::size_t>(n) << (n - 1);
}

}  // namespace

TEST(ValidatePath, Examples) {
    EXPECT_TRUE(checker::validate_path(path_of({"000", "100", "110", "111"}), Dim(3), 3).ok());
    EXPECT_EQ(kind_of(checker::validate_path(path_of({"00", "01", "00"}), Dim(2), 2)), FailureKind::RepeatedVertex);
    EXPECT_EQ(kind_of(checker::validate_path(path_of({"00", "11"}), Dim(2), 1)), FailureKind::NonAdjacentStep);
}

TEST(ValidatePath, OtherCauses) {
    EXPECT_EQ(kind_of(checker::validate_path(path_of({"00", "01"}), Dim(2), 2)), FailureKind::WrongLength);
    EXPECT_EQ(kind_of(checker::validate_path(std::vector<Vertex>{0, 4}, Dim(2), 1)), FailureKind::VertexOutOfRange);
    const auto r = checker::validate_path(path_of({"000", "100", "111"}), Dim(3), 2);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(r.failure->position, 1u);
    EXPECT_TRUE(checker::validate_walk(path_of({"00", "01", "00"}), Dim(2), 2).ok());
}

TEST(ValidatePath, LongPathsUseTheSortedDistinctnessCheck) {
    // Gray code path through all 64 vertices of Q_6, then one that revisits
    std::vector<Vertex> p;
    for (Vertex i = 0; i < 64; ++i) p.push_back(i ^ (i >> 1));
    EXPECT_TRUE(checker::validate_path(p, Dim(6), 63).ok());
    p.push_back(p[p.size() - 2]);
    EXPECT_EQ(kind_of(checker::validate_path(p, Dim(6), 64)), FailureKind::RepeatedVertex);
}

TEST(ValidateDecomposition, AntipodalQ3) {
    EXPECT_TRUE(checker::validate_decomposition(q3_antipodal()).ok());
}

TEST(ValidateDecomposition, DeletedPathIsMissingEdge) {
    const Decomposition full = q3_antipodal();
    Decomposition d(Dim(3), 3);
    for (std::size_t i = 1; i < full.size(); ++i) d.add_path(full.path(i));
    const auto r = checker::validate_decomposition(d);
    EXPECT_EQ(kind_of(r), FailureKind::MissingEdge);
    // the first missing slot in table order is 000-100
    EXPECT_EQ(r.failure->edge, Edge::between(0, 1));
}

TEST(ValidateDecomposition, DuplicatedPathIsDuplicateEdge) {
    Decomposition d = q3_antipodal();
    d.add_path(d.path(2));
    const auto r = checker::validate_decomposition(d);
    EXPECT_EQ(kind_of(r), FailureKind::DuplicateEdge);
    EXPECT_EQ(r.failure->path, 4u);
}

TEST(ValidateDecomposition, SingleEdgeCube) {
    Decomposition d(Dim(1), 1);
    EXPECT_EQ(kind_of(checker::validate_decomposition(d)), FailureKind::MissingEdge);
    d.add_path(std::vector<Vertex>{0, 1});
    EXPECT_TRUE(checker::validate_decomposition(d).ok());
}

TEST(ValidateDecomposition, EachClauseFalsifiedByMutation) {
    const Decomposition good = q3_antipodal();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Decomposition d = good;
        auto& flat = d.mutable_flat();
        const std::size_t at = rng() % flat.size();
        flat[at] ^= coordinate_bit(1 + static_cast<int>(rng() % 3));
        const auto r = checker::validate_decomposition(d);
        ASSERT_FALSE(r.ok());
        // a single flipped coordinate changes parity, so some step breaks
        EXPECT_EQ(r.failure->kind, FailureKind::NonAdjacentStep);
        EXPECT_EQ(r.failure->path, at / d.stride());
    }
}

TEST(ValidateDecomposition, AgreesWithSetReferenceOnSmallCubes) {
    std::mt19937_64 rng(11);
    int accepted = 0;
    for (int n = 1; n <= 4; ++n) {
        const Dim dim(n);
        for (int k = 1; k <= 4; ++k) {
            for (int trial = 0; trial < 400; ++trial) {
                // random walks from random starts, enough of them to cover E if valid
                Decomposition d(dim, k);
                const std::size_t want = dim.edge_count() / static_cast<std::uint64_t>(k) + (rng() % 3) - 1;
                std::vector<Vertex> p(static_cast<std::size_t>(k) + 1);
                for (std::size_t i = 0; i < want && want < 1000; ++i) {
                    p[0] = rng() % dim.vertex_count();
                    for (int j = 1; j <= k; ++j) p[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j) - 1] ^ coordinate_bit(1 + static_cast<int>(rng() % static_cast<unsigned>(n)));
                    d.add_path(p);
                }
                const bool ours = checker::validate_decomposition(d).ok();
                EXPECT_EQ(ours, naive_valid(d)) << "n=" << n << " k=" << k;
                accepted += ours;
            }
        }
    }
    // random sampling does hit valid covers of Q_1 and Q_2
    EXPECT_GT(accepted, 0);
}

TEST(ValidateDecomposition, AgreesWithSetReferenceUnderEdgeSwaps) {
    // valid single-edge decomposition of Q_4 perturbed by swapping vertices between paths
    std::mt19937_64 rng(5);
    Decomposition base(Dim(4), 1);
    for (int i = 1; i <= 4; ++i)
        for (Vertex v = 0; v < 16; ++v)
            if (!(v & coordinate_bit(i))) base.add_path(std::vector<Vertex>{v, v | coordinate_bit(i)});
    ASSERT_TRUE(naive_valid(base));
    for (int trial = 0; trial < 500; ++trial) {
        Decomposition d = base;
        auto& flat = d.mutable_flat();
        std::swap(flat[rng() % flat.size()], flat[rng() % flat.size()]);
        EXPECT_EQ(checker::validate_decomposition(d).ok(), naive_valid(d));
    }
}

TEST(Hamiltonian, FamilyCheck) {
    EXPECT_FALSE(checker::check_hamiltonian_decomposition(Dim(2), {{0, 1, 3, 2}}).has_value());
    EXPECT_TRUE(checker::check_hamiltonian_decomposition(Dim(2), {{0, 1, 3}}).has_value());
    EXPECT_TRUE(checker::check_hamiltonian_decomposition(Dim(2), {{0, 3, 1, 2}}).has_value());
    EXPECT_TRUE(checker::check_hamiltonian_decomposition(Dim(4), {}).has_value());
}

TEST(Feasible, Examples) {
    EXPECT_TRUE(checker::feasible(Dim(7), 7));
    EXPECT_FALSE(checker::feasible(Dim(7), 14));
    EXPECT_TRUE(checker::feasible(Dim(9), 6));
    EXPECT_EQ(checker::infeasibility_reason(Dim(7), 14), "k ≤ n violated");
    EXPECT_EQ(checker::infeasibility_reason(Dim(9), 5), "k | n·2^(n−1) violated");
    EXPECT_THROW((void)checker::feasible(Dim(4), 2), PreconditionError);
}

TEST(FeasibleEven, Examples) {
    EXPECT_TRUE(checker::feasible_even(Dim(4), 8));
    EXPECT_FALSE(checker::feasible_even(Dim(4), 32));
    EXPECT_FALSE(checker::feasible_even(Dim(2), 4));
    EXPECT_EQ(checker::infeasibility_reason_even(Dim(2), 4), "k < 2^n violated");
    EXPECT_THROW((void)checker::feasible_even(Dim(5), 2), PreconditionError);
}

TEST(Feasible, OddPartCharacterization) {
    for (int n = 1; n <= 31; n += 2) {
        for (std::uint64_t k = 1; k <= 4096; ++k) {
            const u128 edges = static_cast<u128>(n) << (n - 1);
            const bool divides = edges % k == 0;
            std::uint64_t odd = k;
            while (odd % 2 == 0) odd /= 2;
            const bool direct = divides && k <= static_cast<std::uint64_t>(n);
            const bool odd_part = static_cast<std::uint64_t>(n) % odd == 0 && k <= static_cast<std::uint64_t>(n);
            ASSERT_EQ(checker::divides_edge_count(Dim(n), k), divides) << n << " " << k;
            ASSERT_EQ(checker::feasible(Dim(n), k), direct) << n << " " << k;
            ASSERT_EQ(direct, odd_part) << n << " " << k;
        }
    }
}

TEST(Feasible, DividesEdgeCountWithoutOverflow) {
    const Dim n(62);
    EXPECT_TRUE(checker::divides_edge_count(n, 31));
    EXPECT_TRUE(checker::divides_edge_count(n, std::uint64_t{1} << 62));
    EXPECT_FALSE(checker::divides_edge_count(n, std::uint64_t{1} << 63));
    EXPECT_FALSE(checker::divides_edge_count(n, 3));
    for (int m = 2; m <= 62; m += 2)
        for (std::uint64_t k = 1; k < 300; ++k) {
            const u128 edges = static_cast<u128>(m) << (m - 1);
            ASSERT_EQ(checker::divides_edge_count(Dim(m), k), edges % k == 0);
            ASSERT_EQ(checker::feasible_even(Dim(m), k),
                      edges % k == 0 && (m >= 63 || static_cast<u128>(k) < (static_cast<u128>(1) << m)));
        }
}
