#include <random>
#include <set>

#include <gtest/gtest.h>

#include "hyperarr/projective.hpp"
#include "oracles.hpp"

using namespace hyperarr;

TEST(Canonicalize, Examples) {
    EXPECT_EQ(ProjectivePoint::from({2, -4}).str(), "(1,-2)");
    EXPECT_EQ(ProjectivePoint::from({-1, 2}).str(), "(1,-2)");
    EXPECT_EQ(canonicalize(RatVector{Rational(2, 3), Rational(4, 3)}).str(), "(1,2)");
    EXPECT_EQ(ProjectivePoint::from({0, -3, 6}).str(), "(0,1,-2)");
    EXPECT_THROW(ProjectivePoint::from({0, 0}), ZeroDirection);
}

TEST(Canonicalize, ScaleInvariantAndIdempotent) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        IntVector v(4);
        do {
            for (auto& x : v) x = uniform_int(rng, -6, 6);
        } while (linalg::is_zero(v));
        const auto p = ProjectivePoint::from(v);
        EXPECT_EQ(ProjectivePoint::from(p.rep()), p);
        RatVector scaled;
        const Rational lambda = Rational(uniform_int(rng, 1, 5) * (t % 2 ? -1 : 1)) / Rational(uniform_int(rng, 1, 7));
        for (const auto& x : v) scaled.push_back(lambda * Rational(x));
        EXPECT_EQ(ProjectivePoint::from(scaled), p);
    }
}

TEST(GenerateEn, Shape) {
    const auto E1 = generate_En(1);
    ASSERT_EQ(E1.size(), 2u);
    EXPECT_EQ(E1[0].str(), "(1,1)");
    EXPECT_EQ(E1[1].str(), "(1,-1)");
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto E = generate_En(n);
        EXPECT_EQ(E.size(), std::size_t{1} << n);
        EXPECT_EQ(linalg::rank_integer(E.rows()), n + 1);
    }
    const auto E3 = generate_En(3);
    std::set<ProjectivePoint> distinct(E3.points().begin(), E3.points().end());
    EXPECT_EQ(distinct.size(), 8u);
    EXPECT_THROW(generate_En(0), PreconditionViolation);
    EXPECT_THROW(generate_En(21), BudgetExceeded);
}

TEST(Configuration, RejectsDuplicatesAndWrongLength) {
    EXPECT_THROW(Configuration::from_rows(1, {{1, 1}, {2, 2}}), PreconditionViolation);
    EXPECT_THROW(Configuration::from_rows(2, {{1, 1}}), std::invalid_argument);
}

TEST(Configuration, TextRoundTrip) {
    const auto H = Configuration::from_rows(2, {{1, 0, 0}, {1, 1, 0}, {0, 0, 1}});
    const auto text = H.to_text();
    const auto back = parse_configuration(text);
    EXPECT_EQ(back.to_text(), text);
    EXPECT_EQ(back.content_hash(), H.content_hash());
    const auto commented = parse_configuration("# a comment\ndim 1\n2 2\n\n1 -1\n");
    EXPECT_EQ(commented.size(), 2u);
    EXPECT_EQ(commented[0].str(), "(1,1)");
}

TEST(Configuration, ParseErrors) {
    EXPECT_THROW(parse_configuration("1 2\n"), ConfigError);
    EXPECT_THROW(parse_configuration("dim 2\n1 2\n"), ConfigError);
    EXPECT_THROW(parse_configuration("dim 1\n0 0\n"), ConfigError);
    EXPECT_THROW(parse_configuration("dim 1\n1 x\n"), ConfigError);
    EXPECT_THROW(parse_configuration("dim 1\n1 1\n2 2\n"), ConfigError);
}

TEST(Builtins, Names) {
    EXPECT_EQ(builtin_configuration("E3")->size(), 8u);
    EXPECT_EQ(builtin_configuration("simplex4")->size(), 5u);
    EXPECT_EQ(builtin_configuration("line3")->size(), 3u);
    EXPECT_EQ(builtin_configuration("line3plus")->size(), 4u);
    EXPECT_FALSE(builtin_configuration("nope"));
}

TEST(ProjectConfig, Examples) {
    const auto r1 = project_config(generate_En(1), ProjectivePoint::from({0, 1}));
    ASSERT_EQ(r1.image.size(), 1u);
    EXPECT_EQ(r1.preimage_classes[0], (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r1.image.ambient_dim(), 0u);

    const auto H = Configuration::from_rows(2, {{1, 0, 0}, {0, 1, 0}});
    const auto r2 = project_config(H, ProjectivePoint::from({0, 0, 1}));
    EXPECT_EQ(r2.image.size(), 2u);
    EXPECT_EQ(r2.min_index, (std::vector<std::size_t>{0, 1}));

    const auto r3 = project_config(generate_En(2), ProjectivePoint::from({5, 3, 1}));
    EXPECT_EQ(r3.image.size(), 4u);
    EXPECT_THROW(project_config(generate_En(2), ProjectivePoint::from({1, 1, 1})), PreconditionViolation);
}

TEST(ProjectConfig, ClassesPartitionSources) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        RandomConfigOptions opt;
        opt.min_dim = 1;
        const auto H = random_configuration(rng, opt);
        const auto u = random_point_outside(H, rng);
        const auto r = project_config(H, u);
        EXPECT_EQ(r.image.ambient_dim() + 1, H.ambient_dim());
        std::vector<std::size_t> all;
        for (const auto& c : r.preimage_classes) all.insert(all.end(), c.begin(), c.end());
        std::sort(all.begin(), all.end());
        EXPECT_EQ(all, identity_order(H.size()));
    }
}

TEST(GenericPoint, AvoidsAllSpannedHyperplanes) {
    const auto E2 = generate_En(2);
    const auto u = ProjectivePoint::from({5, 3, 1});
    std::size_t planes = 0;
    for_each_combination(4, 2, [&](std::span<const std::size_t> c) {
        ++planes;
        const std::uint64_t m = (1ull << c[0]) | (1ull << c[1]);
        EXPECT_EQ(oracle::rank_of(E2.with_point(u), m | (1ull << 4)), 3u);
    });
    EXPECT_EQ(planes, 6u);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = sample_generic_point(generate_En(3), seed);
        EXPECT_FALSE(g.probabilistic);
        EXPECT_EQ(project_config(generate_En(3), g.point).image.size(), 8u);
        EXPECT_EQ(sample_generic_point(generate_En(3), seed).point, g.point);
    }
    const auto deficient = Configuration::from_rows(2, {{1, 0, 0}, {0, 1, 0}});
    const auto g = sample_generic_point(deficient, 1);
    EXPECT_FALSE(deficient.contains(g.point));
}

TEST(ProjectionChain, PreservesIndependence) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto chain = projection_chain(n, 99);
        ASSERT_EQ(chain.size(), n);
        EXPECT_EQ(chain.front().k, n + 1);
        EXPECT_EQ(chain.front().verification, "identity");
        const auto E = generate_En(n);
        for (const auto& P : chain) {
            const auto img = apply_projector(E, P);
            for_each_combination(E.size(), P.k, [&](std::span<const std::size_t> c) {
                std::uint64_t m = 0;
                for (auto i : c) m |= 1ull << i;
                if (oracle::rank_of(E, m) == P.k) EXPECT_EQ(oracle::rank_of(img, m), P.k);
            });
        }
    }
    EXPECT_EQ(projection_chain(3, 4).back().basis, projection_chain(3, 4).back().basis);
}

TEST(RandomConfiguration, Deterministic) {
    std::mt19937_64 a(77), b(77);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(random_configuration(a).to_text(), random_configuration(b).to_text());
}
