#pragma once

// Statistics of the cube E_n: dependency fractions delta_{n,k}, the gamma
// spectra of projected cubes, Bernoulli matrix singularity, and threshold
// function counts with their bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/eta.hpp"
#include "hyperarr/lattice.hpp"
#include "hyperarr/parallel.hpp"
#include "hyperarr/projective.hpp"
#include "hyperarr/separability.hpp"

namespace hyperarr {

inline constexpr double kWilsonZ = 1.959964;
inline constexpr std::size_t kMcShards = 64;

/// Bernoulli proportion with a 95% Wilson score interval.
struct Estimate {
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    double value = 0;
    double ci_low = 0;
    double ci_high = 0;
};

inline Estimate wilson_estimate(std::uint64_t hits, std::uint64_t samples, double z = kWilsonZ) {
    Estimate e;
    e.hits = hits;
    e.samples = samples;
    if (samples == 0) {
        e.ci_high = 1;
        return e;
    }
    const double N = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / N;
    const double z2 = z * z;
    const double denom = 1 + z2 / N;
    const double center = (p + z2 / (2 * N)) / denom;
    const double half = z / denom * std::sqrt(p * (1 - p) / N + z2 / (4 * N * N));
    e.value = p;
    e.ci_low = std::max(0.0, center - half);
    e.ci_high = std::min(1.0, center + half);
    return e;
}

/// Samples of shard s when `samples` are split over `shards` streams.
inline std::uint64_t shard_samples(std::uint64_t samples, std::size_t shards, std::size_t s) {
    return samples / shards + (s < samples % shards ? 1 : 0);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

namespace detail {

using Row64 = std::vector<std::int64_t>;

inline std::vector<Row64> cube_rows(std::size_t n) {
    if (n < 1 || n > 62) throw PreconditionViolation("cube_rows: n out of range");
    std::vector<Row64> rows;
    rows.reserve(std::size_t{1} << n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        Row64 v(n + 1, 1);
        for (std::size_t i = 0; i < n; ++i)
            if ((code >> (n - 1 - i)) & 1u) v[i + 1] = -1;
        rows.push_back(std::move(v));
    }
    return rows;
}

inline std::size_t rank_of(const std::vector<Row64>& rows, std::span<const std::size_t> idx) {
    std::vector<Row64> m;
    m.reserve(idx.size());
    for (auto i : idx) m.push_back(rows[i]);
    try {
        return linalg::bareiss_rank(m);
    } catch (const std::overflow_error&) {
        std::vector<IntVector> big;
        for (const auto& r : m) big.emplace_back(r.begin(), r.end());
        return linalg::bareiss_rank(std::move(big));
    }
}

// Calls visit(combination) for every k-subset of {0..N-1} whose smallest
// element is `first`.
template <class Visitor>
void for_each_combination_from(std::size_t N, std::size_t k, std::size_t first, Visitor&& visit) {
    std::vector<std::size_t> c(k);
    c[0] = first;
    if (k == 1) {
        visit(std::span<const std::size_t>(c));
        return;
    }
    if (first + k > N) return;
    for_each_combination(N - first - 1, k - 1, [&](std::span<const std::size_t> rest) {
        for (std::size_t i = 0; i + 1 < k; ++i) c[i + 1] = first + 1 + rest[i];
        visit(std::span<const std::size_t>(c));
    });
}

// Sums f over all k-subsets of {0..N-1}, sharded by the smallest element.
template <class F>
Integer sum_over_subsets(std::size_t N, std::size_t k, std::size_t jobs, F&& f) {
    if (k == 0 || k > N) return 0;
    const std::size_t shards = N - k + 1;
    return sharded_reduce(
        shards, jobs, Integer(0),
        [&](std::size_t first) {
            std::uint64_t acc = 0;
            for_each_combination_from(N, k, first, [&](std::span<const std::size_t> c) { acc += f(c); });
            return Integer(acc);
        },
        [](Integer a, Integer b) { return a + b; });
}

// Signed maximal minors of k rows in Z^{k+1}; zero iff the rows are dependent.
inline std::vector<Integer> normal_of(const std::vector<IntVector>& rows) {
    return linalg::hyperplane_normal(rows);
}

}  // namespace detail

// -------------------------------------------------------------------------
// delta_{n,k}

struct DeltaOptions {
    Integer budget = Integer(1'000'000'000);  // ordered tuples in exhaustive mode
    std::size_t jobs = 1;
};

/// Number of dependent k-subsets of distinct points of E_n.
inline Integer dependent_subsets(std::size_t n, std::size_t k, std::size_t jobs = 1) {
    const auto rows = detail::cube_rows(n);
    if (k > n + 1) return binomial(static_cast<long long>(rows.size()), static_cast<long long>(k));
    return detail::sum_over_subsets(rows.size(), k, jobs, [&](std::span<const std::size_t> c) -> std::uint64_t {
        return detail::rank_of(rows, c) < c.size() ? 1 : 0;
    });
}

/// Exact fraction of ordered k-tuples of distinct points of E_n that are
/// linearly dependent. Dependency ignores order, so subsets are counted.
inline Rational delta_exact(std::size_t n, std::size_t k, const DeltaOptions& opt = {}) {
    if (n < 1) throw PreconditionViolation("delta: n must be >= 1");
    if (k < 1 || k > n + 1) throw PreconditionViolation("delta: k must lie in 1..n+1");
    if (n > 20) throw BudgetExceeded("delta: cube too large for exhaustive mode");
    const std::uint64_t N = std::uint64_t{1} << n;
    if (falling_factorial(N, k) > opt.budget) throw BudgetExceeded("delta: ordered tuple count exceeds the budget");
    const Integer dep = dependent_subsets(n, k, opt.jobs);
    return Rational(dep) / Rational(binomial(static_cast<long long>(N), static_cast<long long>(k)));
}

/// Monte Carlo estimate of delta_{n,k} from `samples` uniform ordered tuples
/// of distinct points, split over 64 seeded shards.
inline Estimate delta_mc(std::size_t n, std::size_t k, std::uint64_t samples, std::uint64_t seed, std::size_t jobs = 1) {
    if (n < 1 || n > 62) throw PreconditionViolation("delta_mc: n out of range");
    if (k < 1 || k > n + 1) throw PreconditionViolation("delta_mc: k must lie in 1..n+1");
    const long long top = static_cast<long long>((std::uint64_t{1} << n) - 1);
    const std::uint64_t hits = sharded_reduce(
        kMcShards, jobs, std::uint64_t{0},
        [&](std::size_t s) {
            std::mt19937_64 rng(derive_seed(seed, s));
            std::uint64_t h = 0;
            std::vector<std::uint64_t> codes(k);
            std::vector<detail::Row64> m(k, detail::Row64(n + 1));
            for (std::uint64_t t = 0; t < shard_samples(samples, kMcShards, s); ++t) {
                for (std::size_t i = 0; i < k; ++i) {
                    bool fresh;
                    do {
                        codes[i] = static_cast<std::uint64_t>(uniform_int(rng, 0, top));
                        fresh = std::find(codes.begin(), codes.begin() + static_cast<std::ptrdiff_t>(i), codes[i]) ==
                                codes.begin() + static_cast<std::ptrdiff_t>(i);
                    } while (!fresh);
                    m[i][0] = 1;
                    for (std::size_t j = 0; j < n; ++j) m[i][j + 1] = ((codes[i] >> (n - 1 - j)) & 1u) ? -1 : 1;
                }
                std::size_t r;
                try {
                    r = linalg::bareiss_rank(m);
                } catch (const std::overflow_error&) {
                    std::vector<IntVector> big;
                    for (const auto& row : m) big.emplace_back(row.begin(), row.end());
                    r = linalg::bareiss_rank(std::move(big));
                }
                if (r < k) ++h;
            }
            return h;
        },
        [](std::uint64_t a, std::uint64_t b) { return a + b; });
    return wilson_estimate(hits, samples);
}

struct DeltaTable {
    std::size_t n = 0;
    std::string mode;  // "exhaustive" or "monte_carlo"
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::map<std::size_t, Rational> delta;
    std::map<std::size_t, Estimate> estimates;

    /// delta_{n,1} = 0 and delta weakly increasing in k.
    bool monotone() const {
        if (mode == "exhaustive") {
            if (delta.count(1) && delta.at(1) != 0) return false;
            for (auto it = delta.begin(); std::next(it) != delta.end(); ++it)
                if (std::next(it)->second < it->second) return false;
            return true;
        }
        for (auto it = estimates.begin(); it != estimates.end() && std::next(it) != estimates.end(); ++it)
            if (std::next(it)->second.ci_high < it->second.ci_low) return false;
        return true;
    }
};

inline DeltaTable delta_table(std::size_t n, const DeltaOptions& opt = {}) {
    DeltaTable t;
    t.n = n;
    t.mode = "exhaustive";
    for (std::size_t k = 1; k <= n + 1; ++k) t.delta[k] = delta_exact(n, k, opt);
    return t;
}

inline DeltaTable delta_table_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t jobs = 1) {
    DeltaTable t;
    t.n = n;
    t.mode = "monte_carlo";
    t.samples = samples;
    t.seed = seed;
    for (std::size_t k = 1; k <= n + 1; ++k) t.estimates[k] = delta_mc(n, k, samples, derive_seed(seed, 1000 + k), jobs);
    return t;
}

// -------------------------------------------------------------------------
// gamma spectra of E_{n,k+1}

inline Projector identity_projector(std::size_t d) {
    Projector id;
    id.k = d;
    for (std::size_t i = 0; i < d; ++i) {
        IntVector e(d, Integer(0));
        e[i] = 1;
        id.basis.push_back(std::move(e));
    }
    id.matrix = projector_matrix(id.basis);
    id.verification = "identity";
    return id;
}

struct GammaSpectrum {
    std::size_t n = 0;
    std::size_t k = 0;
    std::string projector;                // verification tag of P_{k+1}
    Integer independent = 0;              // independent k-subsets of E_{n,k+1}
    std::map<std::size_t, Integer> counts;  // m -> subsets with q_k = k + m
    std::map<std::size_t, Rational> gamma;
    Rational delta_k = 0;
    Rational delta_k1 = 0;
    Rational epsilon = 0;                 // from gamma
    Rational epsilon_delta = 0;           // delta_{n,k+1} - delta_{n,k}
    std::optional<Rational> epsilon_direct;  // |B_{k+1}| over ordered (k+1)-tuples of E_n
    std::optional<Rational> delta_projected;  // delta of k-subsets of E_{n,k+1}

    Rational gamma_sum() const {
        Rational s = 0;
        for (const auto& [m, g] : gamma) s += g;
        return s;
    }
    std::size_t m_max() const { return (std::size_t{1} << (k - 1)) - k; }
    bool in_range() const { return counts.empty() || counts.rbegin()->first <= m_max(); }
    bool consistent() const {
        return gamma_sum() == 1 && in_range() && epsilon == epsilon_delta &&
               (!epsilon_direct || *epsilon_direct == epsilon) && (!delta_projected || *delta_projected == delta_k);
    }
};

struct GammaOptions {
    std::uint64_t direct_budget = 2'000'000;  // rank tests for the direct epsilon
    std::size_t jobs = 1;
};

/// Classifies the independent k-subsets of E_{n,k+1} = P_{k+1}(E_n) by the
/// number q_k of projected points in their span.
inline GammaSpectrum gamma_spectrum(std::size_t n, std::size_t k, const std::vector<Projector>& chain,
                                    const GammaOptions& opt = {}) {
    if (k < 1 || k > n) throw PreconditionViolation("gamma_spectrum: k must lie in 1..n");
    const Projector& P = chain_at(chain, k + 1);
    const auto En = generate_En(n);
    const auto img = apply_projector(En, P);
    const auto rows = img.rows();
    const std::size_t N = rows.size();
    GammaSpectrum g;
    g.n = n;
    g.k = k;
    g.projector = P.verification;

    using Counts = std::map<std::size_t, std::uint64_t>;
    const auto merged = sharded_reduce(
        N - k + 1, opt.jobs, Counts{},
        [&](std::size_t first) {
            Counts local;
            std::vector<IntVector> sub(k);
            detail::for_each_combination_from(N, k, first, [&](std::span<const std::size_t> c) {
                for (std::size_t i = 0; i < k; ++i) sub[i] = rows[c[i]];
                std::size_t q = 0;
                if (k == 1) {
                    q = 1;
                } else {
                    const auto nrm = detail::normal_of(sub);
                    if (linalg::is_zero(nrm)) return;
                    for (const auto& x : rows)
                        if (linalg::dot(nrm, x) == 0) ++q;
                }
                ++local[q - k];
            });
            return local;
        },
        [](Counts a, const Counts& b) {
            for (const auto& [m, c] : b) a[m] += c;
            return a;
        });
    for (const auto& [m, c] : merged) {
        g.counts[m] = c;
        g.independent += c;
    }
    const Integer subsets = binomial(static_cast<long long>(N), static_cast<long long>(k));
    for (const auto& [m, c] : g.counts) g.gamma[m] = Rational(c) / Rational(g.independent);
    g.delta_projected = Rational(subsets - g.independent) / Rational(subsets);

    DeltaOptions dopt;
    dopt.jobs = opt.jobs;
    g.delta_k = delta_exact(n, k, dopt);
    g.delta_k1 = delta_exact(n, k + 1, dopt);
    g.epsilon_delta = g.delta_k1 - g.delta_k;
    Rational weighted = 0;
    for (const auto& [m, gm] : g.gamma) weighted += gm * Rational(static_cast<long long>(m));
    g.epsilon = (1 - g.delta_k) * weighted / Rational(static_cast<long long>(N - k));

    if (subsets * N <= opt.direct_budget) {
        const auto cube = detail::cube_rows(n);
        const Integer excess = detail::sum_over_subsets(N, k, opt.jobs, [&](std::span<const std::size_t> c) -> std::uint64_t {
            if (detail::rank_of(cube, c) < k) return 0;
            std::vector<std::size_t> ext(c.begin(), c.end());
            ext.push_back(0);
            std::uint64_t extra = 0;
            for (std::size_t x = 0; x < N; ++x) {
                if (std::find(c.begin(), c.end(), x) != c.end()) continue;
                ext.back() = x;
                if (detail::rank_of(cube, ext) == k) ++extra;
            }
            return extra;
        });
        g.epsilon_direct = Rational(excess) / (Rational(subsets) * Rational(static_cast<long long>(N - k)));
    }
    return g;
}

struct DeltaIncrementReport {
    std::size_t n = 0;
    std::size_t k = 0;
    std::string mode;
    double lhs = 0;   // delta_{n,k+1} - delta_{n,k}
    double rhs = 0;   // (k-1)/2^n
    std::optional<Rational> lhs_exact;
    std::optional<Estimate> lower;  // MC estimates of delta_{n,k} and delta_{n,k+1}
    std::optional<Estimate> upper;
    bool holds = false;
};

/// Compares delta_{n,k+1} - delta_{n,k} with (k-1)/2^n. Informational only;
/// the inequality is only claimed for large n.
inline DeltaIncrementReport check_delta_increment(std::size_t n, std::size_t k, std::uint64_t samples = 1'000'000,
                                 std::uint64_t seed = 1, const DeltaOptions& opt = {}) {
    if (k < 1 || k > n) throw PreconditionViolation("check_delta_increment: k must lie in 1..n");
    DeltaIncrementReport r;
    r.n = n;
    r.k = k;
    const Rational rhs = Rational(static_cast<long long>(k - 1)) / Rational(Integer(1) << n);
    r.rhs = to_double(rhs);
    try {
        const Rational d = delta_exact(n, k + 1, opt) - delta_exact(n, k, opt);
        r.mode = "exhaustive";
        r.lhs_exact = d;
        r.lhs = to_double(d);
        r.holds = d <= rhs;
    } catch (const BudgetExceeded&) {
        r.mode = "monte_carlo";
        r.lower = delta_mc(n, k, samples, derive_seed(seed, 2 * k), opt.jobs);
        r.upper = delta_mc(n, k + 1, samples, derive_seed(seed, 2 * k + 1), opt.jobs);
        r.lhs = r.upper->value - r.lower->value;
        r.holds = r.lhs <= r.rhs;
    }
    return r;
}

struct LOGapReport {
    std::size_t n = 0;
    std::vector<std::size_t> window;
    std::map<std::size_t, Rational> gamma;
    bool holds = false;
};

/// gamma^m_{n+1} = 0 for 2^{n-1} - 3n/2 < m < 2^{n-1} - n, using the
/// identity projector and exhaustive enumeration.
inline LOGapReport check_LO_gap(std::size_t n, std::size_t jobs = 1) {
    if (n != 4 && n != 5) throw PreconditionViolation("check_LO_gap: n must be 4 or 5");
    LOGapReport r;
    r.n = n;
    const long long full = 1LL << n;
    for (long long m = 0; m < full / 2 - static_cast<long long>(n); ++m)
        if (2 * m > full - 3 * static_cast<long long>(n)) r.window.push_back(static_cast<std::size_t>(m));
    const std::vector<Projector> chain{identity_projector(n + 1)};
    GammaOptions gopt;
    gopt.direct_budget = 0;
    gopt.jobs = jobs;
    const auto g = gamma_spectrum(n, n, chain, gopt);
    r.gamma = g.gamma;
    r.holds = true;
    for (auto m : r.window)
        if (g.counts.count(m) && g.counts.at(m) != 0) r.holds = false;
    return r;
}

// -------------------------------------------------------------------------
// Bernoulli matrix singularity

namespace detail {

// Rows are bit patterns (bit j set = entry -1). Flipping columns to make row 0
// all ones, subtracting it and halving leaves 0/1 rows below a row of ones;
// its minors are small enough for exact double arithmetic when n <= 18.
inline bool sign_matrix_singular(const std::uint64_t* rows, std::size_t n) {
    if (n == 0) return false;
    if (n == 1) return false;
    if (n > 18) {
        std::vector<Row64> m(n, Row64(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = ((rows[i] >> j) & 1u) ? -1 : 1;
        try {
            return linalg::bareiss_rank(m) < n;
        } catch (const std::overflow_error&) {
            std::vector<IntVector> big;
            for (const auto& row : m) big.emplace_back(row.begin(), row.end());
            return linalg::bareiss_rank(std::move(big)) < n;
        }
    }
    double a[18][18];
    for (std::size_t j = 0; j < n; ++j) a[0][j] = 1;
    for (std::size_t i = 1; i < n; ++i) {
        const std::uint64_t d = rows[i] ^ rows[0];
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<double>((d >> j) & 1u);
    }
    double prev = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return true;
        if (piv != c)
            for (std::size_t j = c; j < n; ++j) std::swap(a[piv][j], a[c][j]);
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    return false;
}

}  // namespace detail

struct SingularityReport {
    std::size_t n = 0;
    std::string mode;  // "exact-reduced", "bruteforce" or "monte_carlo"
    std::uint64_t seed = 0;
    std::optional<Integer> singular_count;
    Integer total = 0;  // 2^{n^2}
    std::optional<Rational> P;
    std::optional<Estimate> estimate;
    std::optional<Rational> asym_ratio_exact;
    std::optional<double> asym_ratio;  // P_n / ((n-1)^2 2^{1-n})
    std::optional<double> asym_ratio_low;
    std::optional<double> asym_ratio_high;
};

inline std::optional<Rational> asym_scale(std::size_t n) {
    if (n < 2) return std::nullopt;
    return Rational(Integer((n - 1) * (n - 1))) / Rational(Integer(1) << (n - 1));
}

inline void fill_exact_ratio(SingularityReport& r) {
    r.P = Rational(*r.singular_count) / Rational(r.total);
    if (auto s = asym_scale(r.n)) {
        r.asym_ratio_exact = *r.P / *s;
        r.asym_ratio = r.asym_ratio_low = r.asym_ratio_high = to_double(*r.asym_ratio_exact);
    }
}

/// Singular count over all 2^{n^2} sign matrices by direct enumeration.
inline SingularityReport singular_bruteforce(std::size_t n, std::size_t jobs = 1) {
    if (n < 1) throw PreconditionViolation("singular_bruteforce: n must be >= 1");
    if (n > 5) throw BudgetExceeded("singular_bruteforce: n must be <= 5");
    SingularityReport r;
    r.n = n;
    r.mode = "bruteforce";
    r.total = Integer(1) << (n * n);
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    const std::size_t shards = std::min<std::uint64_t>(64, total);
    const std::uint64_t per = total / shards;
    const std::uint64_t count = sharded_reduce(
        shards, jobs, std::uint64_t{0},
        [&](std::size_t s) {
            std::uint64_t c = 0;
            std::uint64_t rows[5];
            const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
            for (std::uint64_t code = s * per; code < (s + 1) * per; ++code) {
                for (std::size_t i = 0; i < n; ++i) rows[i] = (code >> (i * n)) & mask;
                if (detail::sign_matrix_singular(rows, n)) ++c;
            }
            return c;
        },
        [](std::uint64_t a, std::uint64_t b) { return a + b; });
    r.singular_count = Integer(count);
    fill_exact_ratio(r);
    return r;
}

/// Exact singular count by row symmetry: normalizing each row's first entry
/// to +1 (factor 2^n) turns matrices into n-tuples of points of E_{n-1}; a
/// tuple is singular iff it repeats a point or its distinct points (n! orders
/// of one subset) are dependent.
inline SingularityReport singular_exact(std::size_t n, std::size_t jobs = 1) {
    if (n < 1) throw PreconditionViolation("singular_exact: n must be >= 1");
    if (n > 6) throw BudgetExceeded("singular_exact: n must be <= 6");
    SingularityReport r;
    r.n = n;
    r.mode = "exact-reduced";
    r.total = Integer(1) << (n * n);
    if (n == 1) {
        r.singular_count = Integer(0);
    } else {
        const std::uint64_t rowspace = std::uint64_t{1} << (n - 1);
        const Integer tuples = pow(Integer(rowspace), static_cast<unsigned>(n));
        const Integer repeats = tuples - falling_factorial(rowspace, n);
        const Integer dependent = dependent_subsets(n - 1, n, jobs);
        r.singular_count = (Integer(1) << n) * (repeats + factorial(n) * dependent);
    }
    fill_exact_ratio(r);
    return r;
}

/// Monte Carlo singularity estimate over 64 seeded shards.
inline SingularityReport singular_mc(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t jobs = 1) {
    if (n < 1 || n > 64) throw PreconditionViolation("singular_mc: n must lie in 1..64");
    if (samples < 10'000) throw PreconditionViolation("singular_mc: at least 10^4 samples required");
    SingularityReport r;
    r.n = n;
    r.mode = "monte_carlo";
    r.seed = seed;
    r.total = Integer(1) << (n * n);
    const std::uint64_t hits = sharded_reduce(
        kMcShards, jobs, std::uint64_t{0},
        [&](std::size_t s) {
            std::mt19937_64 rng(derive_seed(seed, s));
            std::vector<std::uint64_t> rows(n);
            const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
            std::uint64_t h = 0;
            for (std::uint64_t t = 0; t < shard_samples(samples, kMcShards, s); ++t) {
                for (auto& row : rows) row = rng() & mask;
                if (detail::sign_matrix_singular(rows.data(), n)) ++h;
            }
            return h;
        },
        [](std::uint64_t a, std::uint64_t b) { return a + b; });
    r.estimate = wilson_estimate(hits, samples);
    if (auto sc = asym_scale(n)) {
        const double d = to_double(*sc);
        r.asym_ratio = r.estimate->value / d;
        r.asym_ratio_low = r.estimate->ci_low / d;
        r.asym_ratio_high = r.estimate->ci_high / d;
    }
    return r;
}

struct TrendPoint {
    std::size_t n = 0;
    std::string mode;
    double ratio = 0;
    double low = 0;
    double high = 0;
};

struct TrendReport {
    std::vector<TrendPoint> points;
    bool monotone_toward_one = false;
    std::vector<std::size_t> flagged;  // n where the distance to 1 grew beyond the intervals
};

struct TrendOptions {
    std::size_t n_lo = 4;
    std::size_t n_hi = 10;
    std::size_t exact_max = 6;
    std::uint64_t samples = 10'000'000;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

/// Ratio of P_n to (n-1)^2 2^{1-n} over a range of n, exact where feasible.
inline TrendReport singular_trend(const TrendOptions& opt = {}) {
    TrendReport t;
    for (std::size_t n = opt.n_lo; n <= opt.n_hi; ++n) {
        const auto r = n <= opt.exact_max ? singular_exact(n, opt.jobs)
                                          : singular_mc(n, opt.samples, derive_seed(opt.seed, n), opt.jobs);
        t.points.push_back({n, r.mode, r.asym_ratio.value_or(0), r.asym_ratio_low.value_or(0),
                            r.asym_ratio_high.value_or(0)});
    }
    auto nearest = [](const TrendPoint& p) {
        if (p.low <= 1 && 1 <= p.high) return 0.0;
        return std::min(std::abs(p.low - 1), std::abs(p.high - 1));
    };
    auto farthest = [](const TrendPoint& p) { return std::max(std::abs(p.low - 1), std::abs(p.high - 1)); };
    for (std::size_t i = 1; i < t.points.size(); ++i)
        if (nearest(t.points[i]) > farthest(t.points[i - 1])) t.flagged.push_back(t.points[i].n);
    t.monotone_toward_one = t.flagged.empty();
    return t;
}

struct RepeatRowReport {
    std::size_t n = 0;
    Integer closed_form = 0;            // (2^n)^{n+1} - (2^n)_{n+1}
    std::optional<Integer> enumerated;  // by listing all (n+1)-tuples
    Integer tuples = 0;
    Rational fraction = 0;              // repeats / tuples
    double heuristic = 0;               // n(n+1)/2^{n+1}
};

/// (n+1)-tuples of points of E_n containing a repeated point.
inline RepeatRowReport two_close_rows_count(std::size_t n, std::uint64_t enumeration_budget = 10'000'000) {
    if (n < 1 || n > 5) throw PreconditionViolation("two_close_rows_count: n must lie in 1..5");
    RepeatRowReport r;
    r.n = n;
    const std::uint64_t N = std::uint64_t{1} << n;
    r.tuples = pow(Integer(N), static_cast<unsigned>(n + 1));
    r.closed_form = r.tuples - falling_factorial(N, n + 1);
    if (r.tuples <= enumeration_budget) {
        const std::uint64_t total = to_u64(r.tuples);
        std::uint64_t count = 0;
        std::vector<std::uint64_t> digits(n + 1);
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t x = code;
            for (auto& d : digits) {
                d = x % N;
                x /= N;
            }
            std::sort(digits.begin(), digits.end());
            if (std::adjacent_find(digits.begin(), digits.end()) != digits.end()) ++count;
        }
        r.enumerated = Integer(count);
    }
    r.fraction = Rational(r.closed_form) / Rational(r.tuples);
    r.heuristic = static_cast<double>(n * (n + 1)) / static_cast<double>(std::uint64_t{2} << n);
    return r;
}

struct RowDecompositionReport {
    std::size_t n = 0;
    Integer singular_tuples = 0;  // singular (n+1)-tuples over E_n, enumerated
    Integer repeat_tuples = 0;
    Rational delta = 0;            // delta_{n,n+1}
    Integer distinct_tuples = 0;   // (2^n)_{n+1}
    std::optional<Integer> raw_singular;  // all 2^{(n+1)^2} sign matrices
    bool decomposition_holds = false;
    std::optional<bool> raw_matches;      // raw = 2^{n+1} * singular_tuples
};

/// Splits singular sign matrices of size n+1 (rows normalized to a leading
/// +1, i.e. (n+1)-tuples over E_n) into tuples with a repeated row and
/// dependent tuples of distinct rows.
inline RowDecompositionReport check_row_decomposition(std::size_t n, std::size_t raw_max = 3, std::size_t jobs = 1) {
    if (n < 1 || n > 4) throw PreconditionViolation("check_row_decomposition: n must lie in 1..4");
    RowDecompositionReport r;
    r.n = n;
    const auto cube = detail::cube_rows(n);
    const std::uint64_t N = cube.size();
    const std::uint64_t total = to_u64(pow(Integer(N), static_cast<unsigned>(n + 1)));
    const std::size_t shards = 64;
    const std::uint64_t count = sharded_reduce(
        shards, jobs, std::uint64_t{0},
        [&](std::size_t s) {
            std::uint64_t c = 0;
            std::vector<std::size_t> idx(n + 1);
            for (std::uint64_t code = s; code < total; code += shards) {
                std::uint64_t x = code;
                for (auto& d : idx) {
                    d = static_cast<std::size_t>(x % N);
                    x /= N;
                }
                if (detail::rank_of(cube, idx) < n + 1) ++c;
            }
            return c;
        },
        [](std::uint64_t a, std::uint64_t b) { return a + b; });
    r.singular_tuples = count;
    r.repeat_tuples = two_close_rows_count(n).closed_form;
    DeltaOptions dopt;
    dopt.jobs = jobs;
    r.delta = delta_exact(n, n + 1, dopt);
    r.distinct_tuples = falling_factorial(N, n + 1);
    r.decomposition_holds = Rational(r.singular_tuples) == Rational(r.repeat_tuples) + r.delta * Rational(r.distinct_tuples);
    if (n <= raw_max) {
        r.raw_singular = *singular_bruteforce(n + 1, jobs).singular_count;
        r.raw_matches = *r.raw_singular == (Integer(1) << (n + 1)) * r.singular_tuples;
    }
    return r;
}

// -------------------------------------------------------------------------
// threshold functions

struct ThresholdOptions {
    bool deletion_restriction = true;
    bool bruteforce = true;  // only used for n <= 3
    std::string cache_dir;
    std::size_t jobs = 1;
};

struct ThresholdReport {
    std::size_t n = 0;
    Integer count = 0;  // P(2,n)
    Integer zaslavsky = 0;
    std::optional<Integer> deletion_restriction;
    std::optional<Integer> separability;
    Integer schlafli_upper = 0;
    Rational lower_bound = 0;
    Integer asym = 0;  // 2 C(2^n - 1, n)
    Rational ratio_to_asym = 0;

    bool agree() const {
        return (!deletion_restriction || *deletion_restriction == zaslavsky) && (!separability || *separability == zaslavsky);
    }
    bool bounds_hold() const { return lower_bound <= Rational(count) && count <= schlafli_upper; }
};

inline Integer schlafli_upper(std::size_t n) {
    const long long m = (1LL << n) - 1;
    Integer s = 0;
    for (std::size_t i = 0; i <= n; ++i) s += binomial(m, static_cast<long long>(i));
    return 2 * s;
}

inline Rational threshold_lower_bound(std::size_t n) {
    const long long m = (1LL << n) - 1;
    const Rational factor = 1 - Rational(Integer(n * n)) / Rational(Integer(1) << n);
    return 2 * factor * Rational(binomial(m, static_cast<long long>(n)));
}

inline Integer threshold_asym(std::size_t n) { return 2 * binomial((1LL << n) - 1, static_cast<long long>(n)); }

/// P(2,n) as the chamber count of E_n, with independent cross-checks.
inline ThresholdReport threshold_count(std::size_t n, const ThresholdOptions& opt = {}) {
    if (n < 1) throw PreconditionViolation("threshold_count: n must be >= 1");
    if (n > 4) throw BudgetExceeded("threshold_count: n must be <= 4");
    ThresholdReport r;
    r.n = n;
    const auto En = generate_En(n);
    LatticeOptions lopt;
    lopt.jobs = opt.jobs;
    r.zaslavsky = chambers_zaslavsky(cached_lattice(En, opt.cache_dir, lopt));
    r.count = r.zaslavsky;
    if (opt.deletion_restriction) r.deletion_restriction = chambers_deletion_restriction(En);
    if (opt.bruteforce && n <= 3) r.separability = Integer(count_threshold_bruteforce(n));
    r.schlafli_upper = schlafli_upper(n);
    r.lower_bound = threshold_lower_bound(n);
    r.asym = threshold_asym(n);
    r.ratio_to_asym = Rational(r.count) / Rational(r.asym);
    return r;
}

struct BoundsReport {
    ThresholdReport threshold;
    std::uint64_t eta_star = 0;  // eta*_n(E_n)
    bool lower_holds = false;  // 2 eta* <= P(2,n)
    bool upper_holds = false;  // P(2,n) <= Schlafli bound
    bool holds() const { return lower_holds && upper_holds; }
};

inline BoundsReport bounds_report(std::size_t n, const ThresholdOptions& opt = {}) {
    BoundsReport b;
    b.threshold = threshold_count(n, opt);
    EtaOptions eopt;
    eopt.jobs = opt.jobs;
    b.eta_star = eta_star_via_order(generate_En(n), identity_order(std::size_t{1} << n), eopt);
    b.lower_holds = Integer(2 * b.eta_star) <= b.threshold.count;
    b.upper_holds = b.threshold.count <= b.threshold.schlafli_upper;
    return b;
}

}  // namespace hyperarr
