#pragma once

// Invariant suite over generated and random configurations, producing a JSON
// report with one entry per check.

#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperarr/ensembles.hpp"
#include "hyperarr/eta.hpp"
#include "hyperarr/homology.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/projective.hpp"

namespace hyperarr {

using OrderedJson = nlohmann::ordered_json;

struct NamedConfiguration {
    std::string name;
    Configuration config;
};

/// Fixtures E1..E3, simplex1..4, line3, line3plus and `random_count` random
/// spanning configurations with at most 10 points in dimension <= 4.
inline std::vector<NamedConfiguration> standard_corpus(std::size_t random_count, std::uint64_t seed) {
    std::vector<NamedConfiguration> out;
    for (const char* name : {"E1", "E2", "E3", "simplex1", "simplex2", "simplex3", "simplex4", "line3", "line3plus"})
        out.push_back({name, *builtin_configuration(name)});
    std::mt19937_64 rng(derive_seed(seed, 0x636f72707573ull));
    RandomConfigOptions opt;
    opt.full_span = true;
    opt.min_points = 2;
    for (std::size_t i = 0; i < random_count; ++i) {
        opt.min_dim = 1 + i % 4;
        opt.max_dim = opt.min_dim;
        opt.min_points = opt.min_dim + 1;
        out.push_back({"random" + std::to_string(i), random_configuration(rng, opt)});
    }
    return out;
}

enum class CheckStatus { pass, fail, report, flag };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::report: return "report";
        case CheckStatus::flag: return "flag";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::size_t instances = 0;
    std::size_t failures = 0;
    OrderedJson details = OrderedJson::object();
    double seconds = 0;
};

struct VerifyOptions {
    std::string level = "quick";  // quick | full
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    bool deterministic = false;
};

struct VerifyReport {
    VerifyOptions options;
    std::vector<CheckResult> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail) return false;
        return true;
    }

    OrderedJson to_json() const {
        OrderedJson j;
        j["quantity"] = "verify";
        j["schema"] = 1;
        j["level"] = options.level;
        j["seed"] = options.seed;
        j["ok"] = ok();
        j["checks"] = OrderedJson::array();
        for (const auto& c : checks) {
            OrderedJson jc;
            jc["name"] = c.name;
            jc["status"] = to_string(c.status);
            jc["instances"] = c.instances;
            jc["failures"] = c.failures;
            jc["details"] = c.details;
            if (!options.deterministic) jc["seconds"] = c.seconds;
            j["checks"].push_back(jc);
        }
        return j;
    }
};

namespace detail {

// Tallies instances of one check; a hard check fails on any false outcome.
class Tally {
public:
    explicit Tally(CheckResult& r) : r_(r) {}
    void expect(bool ok, const std::string& what) {
        ++r_.instances;
        if (!ok) {
            ++r_.failures;
            if (r_.details["failed"].size() < 10) r_.details["failed"].push_back(what);
        }
    }

private:
    CheckResult& r_;
};

inline std::vector<std::size_t> spanning_subset(const std::vector<NamedConfiguration>& corpus) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        SpanOracle o(corpus[i].config);
        if (has_full_span(o)) idx.push_back(i);
    }
    return idx;
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyOptions& opt) {
    if (opt.level != "quick" && opt.level != "full") throw PreconditionViolation("verify: level must be quick or full");
    const bool full = opt.level == "full";
    VerifyReport report;
    report.options = opt;
    const auto corpus = standard_corpus(full ? 100 : 20, opt.seed);
    const auto spanning = detail::spanning_subset(corpus);
    std::mt19937_64 rng(derive_seed(opt.seed, 0x7665726966ull));

    auto run = [&](const std::string& name, const std::function<void(CheckResult&, detail::Tally&)>& body) {
        CheckResult r;
        r.name = name;
        detail::Tally tally(r);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(r, tally);
            if (r.failures > 0) r.status = CheckStatus::fail;
        } catch (const std::exception& e) {
            r.status = CheckStatus::fail;
            r.details["error"] = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.checks.push_back(std::move(r));
    };

    run("linalg.rank_agreement", [&](CheckResult&, detail::Tally& t) {
        for (int i = 0; i < (full ? 200 : 50); ++i) {
            const auto rows = static_cast<std::size_t>(uniform_int(rng, 1, 5));
            const auto cols = static_cast<std::size_t>(uniform_int(rng, 1, 5));
            std::vector<IntVector> m(rows, IntVector(cols));
            std::vector<RatVector> q(rows, RatVector(cols));
            for (std::size_t a = 0; a < rows; ++a)
                for (std::size_t b = 0; b < cols; ++b) {
                    m[a][b] = uniform_int(rng, -2, 2);
                    q[a][b] = Rational(m[a][b]);
                }
            t.expect(linalg::rank_integer(m) == linalg::rank_rational(q), "matrix " + std::to_string(i));
        }
    });

    run("projective.roundtrip", [&](CheckResult&, detail::Tally& t) {
        for (const auto& c : corpus) {
            const auto back = parse_configuration(c.config.to_text());
            t.expect(back.to_text() == c.config.to_text() && back.content_hash() == c.config.content_hash(), c.name);
        }
    });

    run("projective.projection_chain", [&](CheckResult& r, detail::Tally& t) {
        const std::size_t n = full ? 4 : 3;
        const auto chain = projection_chain(n, opt.seed);
        r.details["n"] = n;
        for (const auto& P : chain) t.expect(P.verification == "identity" || P.verification == "exhaustive", "k=" + std::to_string(P.k));
    });

    run("lattice.zaslavsky_vs_deletion_restriction", [&](CheckResult&, detail::Tally& t) {
        for (const auto& c : corpus)
            t.expect(chambers_zaslavsky(c.config) == chambers_deletion_restriction(c.config), c.name);
    });

    run("lattice.moebius_top_vs_homology", [&](CheckResult&, detail::Tally& t) {
        for (auto i : spanning) {
            const auto& H = corpus[i].config;
            const long n = static_cast<long>(H.ambient_dim());
            t.expect(moebius_top_abs(H) == Integer(homology_rank(H, n - 1)), corpus[i].name);
        }
    });

    run("homology.relative_exactness", [&](CheckResult&, detail::Tally& t) {
        for (auto i : spanning) t.expect(relative_ranks(corpus[i].config).exact(), corpus[i].name);
    });

    run("homology.cpi_order_invariance", [&](CheckResult&, detail::Tally& t) {
        for (auto i : spanning) {
            const auto& H = corpus[i].config;
            const auto rel = relative_ranks(H).rank_rel;
            bool ok = true;
            for (int o = 0; o < (full ? 20 : 5); ++o)
                ok = ok && enumerate_Cpi(H, random_order(H.size(), rng)).size() == rel;
            t.expect(ok, corpus[i].name);
        }
    });

    run("eta.three_way_agreement", [&](CheckResult&, detail::Tally& t) {
        for (const auto& c : corpus) {
            const auto& H = c.config;
            const auto by_order = eta_star_via_order(H);
            bool ok = by_order == eta_star_via_homology(H);
            ok = ok && eta_star_via_flags(H, uniform_probability(H.size())) == Rational(by_order);
            ok = ok && eta_star_via_flags(H, random_probability(H.size(), rng, false)) == Rational(by_order);
            ok = ok && eta_star_via_flags(H, random_probability(H.size(), rng, true)) == Rational(by_order);
            t.expect(ok, c.name);
        }
    });

    run("eta.order_invariance", [&](CheckResult&, detail::Tally& t) {
        for (const auto& c : corpus) {
            const auto base = eta_star_via_order(c.config);
            bool ok = true;
            for (int o = 0; o < 5; ++o) ok = ok && eta_star_via_order(c.config, random_order(c.config.size(), rng)) == base;
            t.expect(ok, c.name);
        }
    });

    run("eta.supermodular", [&](CheckResult&, detail::Tally& t) {
        RandomConfigOptions ro;
        ro.max_points = 7;
        ro.max_dim = 3;
        for (int i = 0; i < (full ? 200 : 40); ++i) {
            const auto H = random_configuration(rng, ro);
            const auto u = random_point_outside(H, rng);
            const auto v = random_point_outside(H.with_point(u), rng);
            t.expect(check_supermodular(H, u, v).holds, "instance " + std::to_string(i));
        }
    });

    run("eta.projection_recursion", [&](CheckResult&, detail::Tally& t) {
        RandomConfigOptions ro;
        ro.max_points = 8;
        for (int i = 0; i < (full ? 100 : 30); ++i) {
            const auto H = random_configuration(rng, ro);
            t.expect(check_projection_recursion(H, random_point_outside(H, rng)).holds, "instance " + std::to_string(i));
        }
    });

    run("eta.dpi_complement", [&](CheckResult&, detail::Tally& t) {
        for (auto i : spanning) {
            const auto& H = corpus[i].config;
            const auto w = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(H.size() - 1)));
            auto order = random_order(H.size(), rng);
            std::iter_swap(order.begin(), std::find(order.begin(), order.end(), w));
            const auto C = enumerate_Cpi(H, order).size();
            const auto C0 = enumerate_Cpi_nonzero(H, order, w).size();
            const auto D = enumerate_Dpi(H, w);
            const auto n = static_cast<long long>(H.ambient_dim());
            const Integer total = binomial(static_cast<long long>(H.size()) - 1, n);
            t.expect(C <= C0 + D && Integer(D) == total - binom_eta_sum(H, H[w]), corpus[i].name);
        }
    });

    run("eta.extension_bound", [&](CheckResult&, detail::Tally& t) {
        for (const auto& c : corpus) {
            const auto w = random_point_outside(c.config, rng);
            t.expect(eta_star_via_order(c.config.with_point(w)) <= binom_eta_sum(c.config, w), c.name);
        }
    });

    run("eta.flags_integer_valued", [&](CheckResult&, detail::Tally& t) {
        for (const auto& c : corpus)
            t.expect(denominator(eta_star_via_flags(c.config, random_probability(c.config.size(), rng, true))) == 1, c.name);
    });

    run("eta.boundary_partition", [&](CheckResult&, detail::Tally& t) {
        std::size_t done = 0;
        for (auto i : spanning) {
            const auto& H = corpus[i].config;
            if (H.ambient_dim() < 2) continue;
            auto order = random_order(H.size(), rng);
            t.expect(check_boundary_partition(H, order, order[0]).holds, corpus[i].name);
            if (++done >= (full ? 60 : 20)) break;
        }
    });

    run("eta.relative_rank_bound", [&](CheckResult&, detail::Tally& t) {
        for (auto i : spanning) {
            const auto& H = corpus[i].config;
            if (H.size() > 10) continue;
            const auto w = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(H.size() - 1)));
            t.expect(check_relative_rank_bound(H, w).holds, corpus[i].name);
        }
    });

    run("eta.symmetrized_flag", [&](CheckResult&, detail::Tally& t) {
        for (auto i : spanning) {
            const auto& H = corpus[i].config;
            auto order = random_order(H.size(), rng);
            SpanOracle o(H);
            Tuple W;
            for (auto x : order) {
                Tuple next = W;
                next.push_back(x);
                if (o.independent(indices_mask(next)) && next.size() <= H.ambient_dim()) W = next;
            }
            if (W.empty()) continue;
            t.expect(symmetrized_flag_bound(H, W).holds, corpus[i].name);
        }
    });

    run("ensembles.delta_telescoping", [&](CheckResult& r, detail::Tally& t) {
        const std::size_t nmax = full ? 4 : 3;
        for (std::size_t n = 1; n <= nmax; ++n) {
            DeltaOptions dopt;
            dopt.jobs = opt.jobs;
            const auto table = delta_table(n, dopt);
            t.expect(table.monotone(), "monotone n=" + std::to_string(n));
            const auto chain = projection_chain(n, opt.seed);
            Rational eps_sum = 0;
            for (std::size_t k = 1; k <= n; ++k) {
                GammaOptions gopt;
                gopt.jobs = opt.jobs;
                const auto g = gamma_spectrum(n, k, chain, gopt);
                t.expect(g.consistent(), "n=" + std::to_string(n) + " k=" + std::to_string(k));
                eps_sum += g.epsilon;
            }
            t.expect(eps_sum == table.delta.at(n + 1), "sum n=" + std::to_string(n));
            OrderedJson d = OrderedJson::object();
            for (const auto& [k, v] : table.delta) d[std::to_string(k)] = v.str();
            r.details["delta"][std::to_string(n)] = d;
        }
    });

    run("ensembles.row_decomposition", [&](CheckResult&, detail::Tally& t) {
        for (std::size_t n = 1; n <= (full ? 4u : 3u); ++n) {
            const auto e = check_row_decomposition(n, 3, opt.jobs);
            t.expect(e.decomposition_holds && e.raw_matches.value_or(true), "n=" + std::to_string(n));
        }
    });

    run("ensembles.two_close_rows", [&](CheckResult&, detail::Tally& t) {
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto rr = two_close_rows_count(n);
            t.expect(rr.enumerated && *rr.enumerated == rr.closed_form, "n=" + std::to_string(n));
        }
    });

    run("ensembles.lo_gap", [&](CheckResult&, detail::Tally& t) {
        for (std::size_t n = 4; n <= (full ? 5u : 4u); ++n) t.expect(check_LO_gap(n, opt.jobs).holds, "n=" + std::to_string(n));
    });

    run("ensembles.threshold_agreement", [&](CheckResult& r, detail::Tally& t) {
        for (std::size_t n = 1; n <= (full ? 4u : 3u); ++n) {
            ThresholdOptions topt;
            topt.jobs = opt.jobs;
            const auto b = bounds_report(n, topt);
            t.expect(b.threshold.agree() && b.threshold.bounds_hold() && b.holds(), "n=" + std::to_string(n));
            r.details["P"][std::to_string(n)] = b.threshold.count.str();
        }
    });

    run("ensembles.singular_exact_vs_bruteforce", [&](CheckResult& r, detail::Tally& t) {
        for (std::size_t n = 1; n <= (full ? 5u : 4u); ++n) {
            const auto a = singular_exact(n, opt.jobs);
            const auto b = singular_bruteforce(n, opt.jobs);
            t.expect(*a.singular_count == *b.singular_count, "n=" + std::to_string(n));
            r.details["count"][std::to_string(n)] = a.singular_count->str();
        }
    });

    run("ensembles.singular_monotone", [&](CheckResult& r, detail::Tally&) {
        r.status = CheckStatus::report;
        bool decreasing = true;
        Rational prev = 2;
        for (std::size_t n = 2; n <= 5; ++n) {
            const auto P = *singular_exact(n, opt.jobs).P;
            r.details["P"][std::to_string(n)] = P.str();
            if (P >= prev) decreasing = false;
            prev = P;
        }
        r.details["decreasing"] = decreasing;
    });

    run("ensembles.mc_determinism", [&](CheckResult&, detail::Tally& t) {
        const auto a = singular_mc(6, 20'000, opt.seed, 1);
        const auto b = singular_mc(6, 20'000, opt.seed, 2);
        t.expect(a.estimate->hits == b.estimate->hits, "singular_mc jobs 1 vs 2");
        const auto c = delta_mc(4, 4, 20'000, opt.seed, 1);
        const auto d = delta_mc(4, 4, 20'000, opt.seed, 3);
        t.expect(c.hits == d.hits, "delta_mc jobs 1 vs 3");
    });

    run("ensembles.mc_vs_exact", [&](CheckResult& r, detail::Tally&) {
        const auto exact = to_double(*singular_exact(5, opt.jobs).P);
        const auto mc = singular_mc(5, 1'000'000, opt.seed, opt.jobs);
        r.details["exact"] = exact;
        r.details["estimate"] = mc.estimate->value;
        r.details["ci"] = {mc.estimate->ci_low, mc.estimate->ci_high};
        r.status = (mc.estimate->ci_low <= exact && exact <= mc.estimate->ci_high) ? CheckStatus::pass : CheckStatus::flag;
    });

    run("ensembles.delta_increment", [&](CheckResult& r, detail::Tally&) {
        r.status = CheckStatus::report;
        for (std::size_t n = 2; n <= 4; ++n)
            for (std::size_t k = 2; k <= n; ++k) {
                const auto l = check_delta_increment(n, k);
                r.details[std::to_string(n) + "," + std::to_string(k)] = {{"lhs", l.lhs}, {"rhs", l.rhs}, {"holds", l.holds}};
            }
    });

    return report;
}

}  // namespace hyperarr
