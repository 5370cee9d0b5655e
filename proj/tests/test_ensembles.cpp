#include <random>

#include <gtest/gtest.h>

#include "hyperarr/ensembles.hpp"
#include "hyperarr/separability.hpp"
#include "oracles.hpp"

using namespace hyperarr;

namespace {

Rational q(long long a, long long b) { return Rational(Integer(a), Integer(b)); }

}  // namespace

TEST(Wilson, Interval) {
    const auto e = wilson_estimate(50, 100);
    EXPECT_DOUBLE_EQ(e.value, 0.5);
    EXPECT_NEAR(e.ci_low, 0.4038, 1e-4);
    EXPECT_NEAR(e.ci_high, 0.5962, 1e-4);
    const auto zero = wilson_estimate(0, 1000);
    EXPECT_NEAR(zero.ci_low, 0, 1e-12);
    EXPECT_GT(zero.ci_high, 0);
}

TEST(Delta, MatchesOrderedTupleOracle) {
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 1; k <= n + 1; ++k)
            EXPECT_EQ(delta_exact(n, k), oracle::delta_ordered(n, k)) << "n=" << n << " k=" << k;
    EXPECT_EQ(delta_exact(4, 3), oracle::delta_ordered(4, 3));
}

TEST(Delta, Goldens) {
    EXPECT_EQ(delta_exact(2, 3), 0);
    EXPECT_EQ(delta_exact(2, 3), oracle::delta_ordered(2, 3));
    EXPECT_EQ(delta_exact(3, 4), q(6, 35));
    EXPECT_EQ(delta_exact(4, 4), q(5, 91));
    EXPECT_EQ(delta_exact(4, 5), q(85, 273));
}

TEST(Delta, BudgetAndPreconditions) {
    DeltaOptions tiny;
    tiny.budget = 10;
    EXPECT_THROW(delta_exact(3, 3, tiny), BudgetExceeded);
    EXPECT_THROW(delta_exact(2, 4), PreconditionViolation);
}

TEST(Delta, TableIsMonotone) {
    for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(delta_table(n).monotone());
}

TEST(Delta, MonteCarloCoversExact) {
    const auto e = delta_mc(4, 5, 200'000, 3, 2);
    const double exact = to_double(q(85, 273));
    EXPECT_LT(std::abs(e.value - exact), 0.01);
    EXPECT_EQ(delta_mc(4, 5, 50'000, 9, 1).hits, delta_mc(4, 5, 50'000, 9, 4).hits);
}

TEST(Gamma, TelescopingAndGoldens) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto chain = projection_chain(n, 7);
        Rational eps_sum = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            const auto g = gamma_spectrum(n, k, chain);
            EXPECT_TRUE(g.consistent()) << "n=" << n << " k=" << k;
            EXPECT_EQ(g.gamma_sum(), 1);
            EXPECT_TRUE(g.in_range());
            ASSERT_TRUE(g.epsilon_direct);
            EXPECT_EQ(*g.epsilon_direct, g.epsilon);
            EXPECT_EQ(g.epsilon, oracle::delta_ordered(n, k + 1) - oracle::delta_ordered(n, k));
            eps_sum += g.epsilon;
        }
        EXPECT_EQ(eps_sum, delta_exact(n, n + 1));
    }
    EXPECT_EQ(gamma_spectrum(3, 3, projection_chain(3, 7)).epsilon, q(6, 35));
}

TEST(Gamma, CubeFourGoldens) {
    const auto chain = projection_chain(4, 7);
    const auto g = gamma_spectrum(4, 4, chain);
    EXPECT_TRUE(g.consistent());
    const std::map<std::size_t, Rational> expect{{0, q(2, 43)}, {2, q(12, 43)}, {4, q(29, 43)}};
    EXPECT_EQ(g.gamma, expect);
    EXPECT_EQ(g.epsilon, q(10, 39));
    EXPECT_EQ(g.epsilon, delta_exact(4, 5) - delta_exact(4, 4));
}

TEST(LOGap, Windows) {
    const auto r4 = check_LO_gap(4);
    EXPECT_EQ(r4.window, (std::vector<std::size_t>{3}));
    EXPECT_TRUE(r4.holds);
    EXPECT_THROW(check_LO_gap(3), PreconditionViolation);
}

TEST(DeltaIncrement, ExactMode) {
    const auto r = check_delta_increment(3, 2);
    EXPECT_EQ(r.mode, "exhaustive");
    ASSERT_TRUE(r.lhs_exact);
    EXPECT_EQ(*r.lhs_exact, delta_exact(3, 3) - delta_exact(3, 2));
    const auto big = check_delta_increment(4, 4);
    EXPECT_FALSE(big.holds);
}

TEST(Singular, SmallExactValues) {
    const std::uint64_t golden[] = {0, 8, 320, 43264};
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto e = singular_exact(n);
        const auto b = singular_bruteforce(n);
        ASSERT_TRUE(e.singular_count && b.singular_count);
        EXPECT_EQ(*e.singular_count, *b.singular_count);
        EXPECT_EQ(*e.singular_count, golden[n - 1]);
        if (n <= 3) EXPECT_EQ(Integer(oracle::singular_sign_matrices(n)), golden[n - 1]);
    }
    EXPECT_EQ(*singular_exact(1).P, 0);
    EXPECT_EQ(*singular_exact(2).P, q(1, 2));
    EXPECT_EQ(*singular_exact(3).P, q(5, 8));
    EXPECT_EQ(*singular_exact(4).P, q(169, 256));
}

TEST(Singular, FiveAndSix) {
    const auto e5 = singular_exact(5, 2);
    EXPECT_EQ(*e5.singular_count, Integer(22003712));
    EXPECT_EQ(*e5.P, q(1343, 2048));
    EXPECT_EQ(*singular_exact(6, 2).singular_count, Integer("43090149376"));
}

TEST(Singular, KernelAgreesWithLaplace) {
    std::mt19937_64 rng(200);
    for (int t = 0; t < 2000; ++t) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 6));
        std::vector<std::uint64_t> rows(n);
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
        for (std::size_t i = 0; i < n; ++i) {
            rows[i] = rng() & ((std::uint64_t{1} << n) - 1);
            for (std::size_t j = 0; j < n; ++j) m[i][j] = ((rows[i] >> j) & 1u) ? -1 : 1;
        }
        EXPECT_EQ(detail::sign_matrix_singular(rows.data(), n), oracle::laplace_det(m) == 0);
    }
}

TEST(Singular, MonteCarloIsReproducible) {
    const auto a = singular_mc(8, 50'000, 5, 1);
    const auto b = singular_mc(8, 50'000, 5, 3);
    EXPECT_EQ(a.estimate->hits, b.estimate->hits);
    EXPECT_NE(singular_mc(8, 50'000, 6, 1).estimate->hits, a.estimate->hits);
    EXPECT_THROW(singular_mc(8, 10, 5, 1), PreconditionViolation);
}

TEST(RepeatRows, ClosedFormMatchesEnumeration) {
    const std::uint64_t golden[] = {2, 40, 2416, 524416};
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto r = two_close_rows_count(n);
        ASSERT_TRUE(r.enumerated);
        EXPECT_EQ(*r.enumerated, r.closed_form);
        EXPECT_EQ(r.closed_form, golden[n - 1]);
    }
    EXPECT_EQ(two_close_rows_count(5).closed_form, Integer(421283584));
}

TEST(RowDecomposition, SingularTuples) {
    const std::uint64_t golden[] = {2, 40, 2704};
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto r = check_row_decomposition(n);
        EXPECT_TRUE(r.decomposition_holds);
        ASSERT_TRUE(r.raw_matches);
        EXPECT_TRUE(*r.raw_matches);
        EXPECT_EQ(r.singular_tuples, golden[n - 1]);
        if (n <= 2) EXPECT_EQ(*r.raw_singular, Integer(oracle::singular_sign_matrices(n + 1)));
    }
}

TEST(Threshold, SeparabilityOracle) {
    EXPECT_TRUE(is_threshold_function(2, {1, 1, 1, -1}));
    EXPECT_FALSE(is_threshold_function(2, {1, -1, -1, 1}));
    EXPECT_EQ(count_threshold_bruteforce(1), 4u);
    EXPECT_EQ(count_threshold_bruteforce(2), 14u);
    EXPECT_EQ(count_threshold_bruteforce(3), 104u);
    EXPECT_THROW(count_threshold_bruteforce(4), BudgetExceeded);
}

TEST(Threshold, CountsAndBounds) {
    const Integer golden[] = {4, 14, 104, 1882};
    const Integer upper[] = {4, 14, 128, 3882};
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto b = bounds_report(n);
        EXPECT_TRUE(b.threshold.agree());
        EXPECT_TRUE(b.holds());
        EXPECT_EQ(b.threshold.count, golden[n - 1]);
        EXPECT_EQ(b.threshold.schlafli_upper, upper[n - 1]);
        if (n <= 3) EXPECT_EQ(*b.threshold.separability, golden[n - 1]);
    }
}

TEST(FourierMotzkin, Basics) {
    std::vector<Inequality> rows{{{Integer(1)}, true}, {{Integer(-1)}, true}};
    EXPECT_FALSE(fm_feasible(rows));
    rows = {{{Integer(1), Integer(0)}, true}, {{Integer(0), Integer(1)}, true}};
    EXPECT_TRUE(fm_feasible(rows));
}
