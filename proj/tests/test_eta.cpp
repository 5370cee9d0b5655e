#include <random>

#include <gtest/gtest.h>

#include "hyperarr/eta.hpp"
#include "hyperarr/lattice.hpp"
#include "oracles.hpp"

using namespace hyperarr;

TEST(EtaStar, CubeGoldens) {
    const std::uint64_t golden[] = {1, 3, 23, 465};
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto E = generate_En(n);
        const auto by_order = eta_star_via_order(E);
        EXPECT_EQ(by_order, oracle::eta_by_definition(E, identity_order(E.size())));
        EXPECT_EQ(by_order, eta_star_via_homology(E));
        EXPECT_EQ(Rational(by_order), eta_star_via_flags(E, uniform_probability(E.size())));
        EXPECT_EQ(by_order, golden[n - 1]);
    }
}

TEST(EtaStar, Examples) {
    for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(eta_star_via_order(coordinate_simplex(n)), 1u);
    EXPECT_EQ(eta_star_via_order(*builtin_configuration("line3")), 0u);
    EXPECT_EQ(eta_star_via_order(Configuration::from_rows(1, {{1, 0}, {1, 1}, {1, 2}})), 2u);
    EXPECT_EQ(eta_star_via_order(Configuration::from_rows(2, {{1, 0, 0}, {0, 1, 0}})), 0u);
    EXPECT_EQ(eta_star_via_flags(Configuration::from_rows(2, {{1, 0, 0}, {0, 1, 0}}), uniform_probability(2)), 0);
}

TEST(EtaStar, OrderConditionOnE2) {
    const auto E2 = generate_En(2);
    const auto order = identity_order(4);
    EXPECT_FALSE(satisfies_eta(E2, order, Tuple{0, 1}));
    std::size_t count = 0;
    for_each_combination(4, 2, [&](std::span<const std::size_t> c) {
        if (satisfies_eta(E2, order, Tuple(c.begin(), c.end()))) ++count;
    });
    EXPECT_EQ(count, 3u);
}

TEST(EtaStar, ThreeWayAgreementWithDefinitionOracle) {
    std::mt19937_64 rng(100);
    RandomConfigOptions opt;
    opt.max_points = 9;
    for (int t = 0; t < 80; ++t) {
        const auto H = random_configuration(rng, opt);
        const auto order = random_order(H.size(), rng);
        const auto e = eta_star_via_order(H, order);
        EXPECT_EQ(e, oracle::eta_by_definition(H, order)) << H.to_text();
        EXPECT_EQ(e, eta_star_via_homology(H));
        EXPECT_EQ(eta_star_via_flags(H, random_probability(H.size(), rng, false)), Rational(e));
        if (H.size() >= 2) EXPECT_EQ(eta_star_via_flags(H, random_probability(H.size(), rng, true)), Rational(e));
    }
}

TEST(EtaStar, ParallelMatchesSerial) {
    EtaOptions par;
    par.jobs = 4;
    const auto E = generate_En(4);
    EXPECT_EQ(eta_star_via_order(E, identity_order(E.size()), par), 465u);
}

TEST(EtaStar, FlagsRejectZeroTotalMass) {
    ProbabilityVector p{Rational(1), Rational(-1)};
    EXPECT_THROW(eta_star_via_flags(generate_En(1), p), PreconditionViolation);
    EXPECT_THROW(eta_star_via_flags(generate_En(1), uniform_probability(3)), PreconditionViolation);
}

TEST(FlagProfile, CubeExample) {
    const auto E2 = generate_En(2);
    const auto f = flag_profile(E2, Tuple{0, 1});
    EXPECT_EQ(f.q, (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(f.product, 2);
    EXPECT_THROW(flag_profile(E2, Tuple{0, 0}), PreconditionViolation);
}

TEST(Supermodularity, RandomInstances) {
    std::mt19937_64 rng(101);
    RandomConfigOptions opt;
    opt.max_points = 7;
    opt.max_dim = 3;
    for (int t = 0; t < 100; ++t) {
        const auto H = random_configuration(rng, opt);
        const auto u = random_point_outside(H, rng);
        const auto v = random_point_outside(H.with_point(u), rng);
        EXPECT_TRUE(check_supermodular(H, u, v).holds) << H.to_text();
    }
    EXPECT_THROW(check_supermodular(generate_En(1), generate_En(1)[0], ProjectivePoint::from({1, 0})),
                 PreconditionViolation);
}

TEST(ProjectionRecursion, RandomInstances) {
    std::mt19937_64 rng(102);
    RandomConfigOptions opt;
    opt.max_points = 8;
    for (int t = 0; t < 60; ++t) {
        const auto H = random_configuration(rng, opt);
        const auto c = check_projection_recursion(H, random_point_outside(H, rng));
        EXPECT_TRUE(c.holds) << H.to_text();
    }
}

TEST(ProjectionRecursion, CubeWithGenericPoint) {
    const auto c = check_projection_recursion(generate_En(2), ProjectivePoint::from({5, 3, 1}));
    EXPECT_EQ(c.eta_H, 3u);
    EXPECT_EQ(c.image_size, 4u);
    EXPECT_EQ(c.eta_proj, 3u);
    EXPECT_EQ(c.lhs, 6u);
}

TEST(BinomEtaSum, BoundsEtaOfExtension) {
    std::mt19937_64 rng(103);
    RandomConfigOptions opt;
    opt.max_points = 8;
    for (int t = 0; t < 60; ++t) {
        const auto H = random_configuration(rng, opt);
        const auto w = random_point_outside(H, rng);
        EXPECT_LE(eta_star_via_order(H.with_point(w)), binom_eta_sum(H, w));
    }
}

TEST(Dpi, ComplementsBinomEtaSum) {
    std::mt19937_64 rng(104);
    RandomConfigOptions opt;
    opt.full_span = true;
    for (int t = 0; t < 60; ++t) {
        const auto H = random_configuration(rng, opt);
        const auto w = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(H.size()) - 1));
        const Integer total = binomial(static_cast<long long>(H.size()) - 1, static_cast<long long>(H.ambient_dim()));
        EXPECT_EQ(Integer(enumerate_Dpi(H, w)), total - binom_eta_sum(H, H[w]));
        auto order = random_order(H.size(), rng);
        std::iter_swap(order.begin(), std::find(order.begin(), order.end(), w));
        EXPECT_LE(enumerate_Cpi(H, order).size(), enumerate_Cpi_nonzero(H, order, w).size() + enumerate_Dpi(H, w));
    }
}

TEST(BoundaryPartition, E3AndRandom) {
    const auto E3 = generate_En(3);
    std::mt19937_64 rng(105);
    for (int o = 0; o < 5; ++o) {
        const auto order = random_order(E3.size(), rng);
        EXPECT_TRUE(check_boundary_partition(E3, order, order[0]).holds);
    }
    RandomConfigOptions opt;
    opt.full_span = true;
    opt.min_dim = 2;
    for (int t = 0; t < 30; ++t) {
        const auto H = random_configuration(rng, opt);
        const auto order = random_order(H.size(), rng);
        EXPECT_TRUE(check_boundary_partition(H, order, order[0]).holds) << H.to_text();
    }
    EXPECT_THROW(check_boundary_partition(E3, identity_order(8), 3), PreconditionViolation);
}

TEST(PiClosed, SecondPointIsClosed) {
    const auto E2 = generate_En(2);
    const auto order = identity_order(4);
    EXPECT_TRUE(is_pi_closed(E2, order, {1}));
}

TEST(RelativeRankBound, Holds) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto c = check_relative_rank_bound(generate_En(n), 0);
        EXPECT_TRUE(c.holds) << "n=" << n << " rank_rel=" << c.rank_rel << " rhs=" << c.rhs;
    }
    std::mt19937_64 rng(106);
    RandomConfigOptions opt;
    opt.full_span = true;
    opt.max_points = 8;
    for (int t = 0; t < 40; ++t) {
        const auto H = random_configuration(rng, opt);
        EXPECT_TRUE(check_relative_rank_bound(H, 0).holds) << H.to_text();
    }
    EXPECT_THROW(relative_rank_bound_rhs(generate_En(4), 0), BudgetExceeded);
}

TEST(SymmetrizedFlag, Examples) {
    const auto E2 = generate_En(2);
    const auto c = symmetrized_flag_bound(E2, Tuple{0, 1});
    EXPECT_EQ(c.k, 2u);
    EXPECT_EQ(c.m, 0u);
    EXPECT_EQ(c.sym, 1);
    EXPECT_TRUE(c.holds);
    const auto line = symmetrized_flag_bound(*builtin_configuration("line3"), Tuple{0, 1});
    EXPECT_EQ(line.m, 1u);
    EXPECT_TRUE(line.holds);
}
