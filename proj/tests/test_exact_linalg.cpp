#include <random>

#include <gtest/gtest.h>

#include "hyperarr/exact_linalg.hpp"
#include "hyperarr/combinatorics.hpp"
#include "oracles.hpp"

using namespace hyperarr;
using namespace hyperarr::linalg;

namespace {

RatVector rv(std::initializer_list<long long> xs) {
    RatVector v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

IntVector iv(std::initializer_list<long long> xs) {
    IntVector v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

std::vector<RatVector> random_rat_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::vector<RatVector> m(rows, RatVector(cols));
    for (auto& r : m)
        for (auto& x : r) {
            const auto num = uniform_int(rng, -3, 3);
            const auto den = uniform_int(rng, 1, 3);
            x = Rational(num) / Rational(den);
        }
    return m;
}

}  // namespace

TEST(RankRational, SmallExamples) {
    EXPECT_EQ(rank_rational(std::vector<RatVector>{rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})}), 3u);
    EXPECT_EQ(rank_rational(std::vector<RatVector>{rv({1, 1}), rv({2, 2})}), 1u);
    EXPECT_EQ(rank_rational(std::vector<RatVector>{rv({1, 1, 1}), rv({1, 1, -1}), rv({1, -1, 1}), rv({1, -1, -1})}), 3u);
    EXPECT_EQ(rank_rational(std::vector<RatVector>{}), 0u);
}

TEST(RankRational, RaggedRowsThrow) {
    EXPECT_THROW(rank_rational(std::vector<RatVector>{rv({1, 2}), rv({1})}), DimensionMismatch);
}

TEST(RankRational, MatchesGaussJordanAndIsInvariant) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const auto rows = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        const auto cols = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        auto m = random_rat_matrix(rng, rows, cols);
        if (t % 3 == 0 && rows > 1) m[rows - 1] = m[0];
        const auto r = rank_rational(m);
        EXPECT_EQ(r, oracle::rank(m));
        auto perm = m;
        shuffle(perm, rng);
        EXPECT_EQ(rank_rational(perm), r);
        for (auto& x : perm[0]) x *= Rational(-7, 3);
        EXPECT_EQ(rank_rational(perm), r);
    }
}

TEST(Bareiss, Int64PathAgreesWithBigIntegers) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 5));
        std::vector<std::vector<std::int64_t>> small(n, std::vector<std::int64_t>(n));
        std::vector<std::vector<long long>> ll(n, std::vector<long long>(n));
        std::vector<IntVector> big(n, IntVector(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                ll[i][j] = small[i][j] = uniform_int(rng, -4, 4);
                big[i][j] = small[i][j];
            }
        EXPECT_EQ(Integer(bareiss_det(small)), bareiss_det(big));
        EXPECT_EQ(bareiss_det(big), Integer(oracle::laplace_det(ll)));
        EXPECT_EQ(bareiss_rank(small), bareiss_rank(big));
    }
}

TEST(Bareiss, OverflowIsReported) {
    const std::int64_t big = std::int64_t{1} << 40;
    std::vector<std::vector<std::int64_t>> m{{big, 1, 0}, {1, big, 1}, {0, 1, big}};
    EXPECT_THROW(bareiss_det(m), std::overflow_error);
}

TEST(InSpan, Examples) {
    EXPECT_TRUE(in_span(rv({0, 0}), std::vector<RatVector>{rv({1, 0})}));
    EXPECT_FALSE(in_span(rv({1, 1}), std::vector<RatVector>{rv({1, 0})}));
    EXPECT_TRUE(in_span(rv({1, -1, -1}), std::vector<RatVector>{rv({1, 1, 1}), rv({1, 0, 0})}));
    EXPECT_THROW(in_span(rv({1, 1}), std::vector<RatVector>{rv({1, 0, 0})}), DimensionMismatch);
}

TEST(InSpan, AgreesWithRankTest) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        const auto d = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        const auto k = static_cast<std::size_t>(uniform_int(rng, 1, 4));
        auto basis = random_rat_matrix(rng, k, d);
        RatVector v = random_rat_matrix(rng, 1, d)[0];
        if (t % 2 == 0) {
            v.assign(d, Rational(0));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < d; ++j) v[j] += Rational(static_cast<long long>(i) - 1) * basis[i][j];
        }
        auto ext = basis;
        ext.push_back(v);
        EXPECT_EQ(in_span(v, basis), oracle::rank(ext) == oracle::rank(basis));
    }
}

TEST(ProjectOff, Examples) {
    EXPECT_EQ(project_off(iv({1, 1}), iv({1, 0})), rv({0, 1}));
    EXPECT_EQ(project_off(iv({2, 3}), iv({2, 3})), rv({0, 0}));
    const RatVector expect{Rational(2, 3), Rational(2, 3), Rational(4, 3)};
    EXPECT_EQ(project_off(iv({1, 1, 1}), iv({1, 1, -1})), expect);
    EXPECT_THROW(project_off(iv({1, 1}), iv({0, 0})), ZeroDirection);
}

TEST(ProjectOff, ResultIsOrthogonal) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto d = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        IntVector v(d), w(d);
        for (auto& x : v) x = uniform_int(rng, -5, 5);
        do {
            for (auto& x : w) x = uniform_int(rng, -5, 5);
        } while (is_zero(w));
        EXPECT_EQ(dot(project_off(v, w), to_rational(w)), 0);
    }
}

TEST(Gf2Rank, Examples) {
    EXPECT_EQ(gf2_rank(Gf2Matrix(3, 4)), 0u);
    Gf2Matrix id(4, 4);
    for (std::size_t i = 0; i < 4; ++i) id.set(i, i);
    EXPECT_EQ(gf2_rank(id), 4u);
    const std::vector<std::string> rows{"1100", "0110", "1010"};
    EXPECT_EQ(gf2_rank(Gf2Matrix::from_strings(rows)), 2u);
}

TEST(Gf2Rank, TransposeAndOracle) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        const auto r = static_cast<std::size_t>(uniform_int(rng, 1, 70));
        const auto c = static_cast<std::size_t>(uniform_int(rng, 1, 70));
        Gf2Matrix m(r, c), mt(c, r);
        std::vector<std::vector<int>> dense(r, std::vector<int>(c, 0));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (uniform_int(rng, 0, 3) == 0) {
                    m.set(i, j);
                    mt.set(j, i);
                    dense[i][j] = 1;
                }
        const auto k = gf2_rank(m);
        EXPECT_EQ(k, gf2_rank(mt));
        EXPECT_EQ(k, oracle::gf2_rank(dense));
        EXPECT_LE(k, std::min(r, c));
    }
}

TEST(HyperplaneNormal, OrthogonalToRows) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const auto d = static_cast<std::size_t>(uniform_int(rng, 2, 6));
        std::vector<IntVector> rows(d - 1, IntVector(d));
        for (auto& r : rows)
            for (auto& x : r) x = uniform_int(rng, -3, 3);
        const auto nrm = hyperplane_normal(rows);
        for (const auto& r : rows) EXPECT_EQ(dot(nrm, r), 0);
        EXPECT_EQ(is_zero(nrm), rank_integer(rows) < d - 1);
    }
}

TEST(CanonicalRref, SameSpanSameBasis) {
    const std::vector<IntVector> a{iv({1, 2, 3}), iv({0, 1, 1})};
    const std::vector<IntVector> b{iv({2, 5, 7}), iv({1, 3, 4})};
    EXPECT_EQ(canonical_rref(a), canonical_rref(b));
}

TEST(Combinatorics, BinomialAndFalling) {
    EXPECT_EQ(binomial(7, 3), 35);
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(binomial(5, -1), 0);
    EXPECT_EQ(falling_factorial(4, 3), 24);
    EXPECT_EQ(factorial(6), 720);
    std::size_t count = 0;
    for_each_combination(6, 3, [&](std::span<const std::size_t>) { ++count; });
    EXPECT_EQ(count, 20u);
}

TEST(Combinatorics, SeedDerivationIsStable) {
    EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
    std::mt19937_64 a(42), b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(uniform_int(a, -5, 9), uniform_int(b, -5, 9));
}
