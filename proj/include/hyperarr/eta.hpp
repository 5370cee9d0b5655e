#pragma once

// eta-star: the rank of H_{n-1}(K^H; GF(2)), computed by counting tuples that
// satisfy the order condition, by homology, and by the combinatorial flag
// formula; plus the inequalities and identities it satisfies.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/homology.hpp"
#include "hyperarr/parallel.hpp"
#include "hyperarr/projective.hpp"
#include "hyperarr/span_oracle.hpp"

namespace hyperarr {

using ProbabilityVector = std::vector<Rational>;

/// True iff the n-tuple W (point indices) satisfies the order condition: no
/// entry at the first position, and every entry is the order-minimal point of
/// H inside the span of itself and the entries after it.
inline bool satisfies_eta(const Configuration& H, const Order& order, const Tuple& W) {
    validate_order(order, H.size());
    if (W.size() != H.ambient_dim()) throw PreconditionViolation("satisfies_eta: tuple length must equal n");
    const auto pos = positions_of(order);
    for (auto i : W)
        if (i >= H.size()) throw PreconditionViolation("satisfies_eta: index out of range");
    for (std::size_t l = 0; l < W.size(); ++l) {
        if (pos[W[l]] == 0) return false;
        if (l + 1 < W.size() && pos[W[l]] >= pos[W[l + 1]]) return false;
    }
    SpanOracle o(H);
    Mask suffix = 0;
    for (std::size_t l = W.size(); l-- > 0;) {
        suffix |= bit(W[l]);
        if (o.rank(suffix) != W.size() - l) return false;
        for (auto j : mask_indices(o.closure(suffix)))
            if (pos[j] < pos[W[l]]) return false;
    }
    return true;
}

namespace detail {

// Counts the tuples satisfying the order condition below the flat `span`
// (a closure mask in position space) that already has `rank` entries.
inline std::uint64_t count_eta_chains(SpanOracle& o, Mask span, std::size_t rank, std::size_t n) {
    if (rank == n) return 1;
    std::uint64_t total = 0;
    for (std::size_t x = 1; x < o.size(); ++x) {
        if (span & bit(x)) continue;
        const Mask next = o.closure(span | bit(x));
        if (lowest(next) != x) continue;
        total += count_eta_chains(o, next, rank + 1, n);
    }
    return total;
}

}  // namespace detail

struct EtaOptions {
    std::size_t jobs = 1;
};

/// |B^pi(H)|: entries are chosen from the last backwards; each new entry must
/// be the minimum of the flat it spans together with the entries already
/// chosen, which also makes the positions increase. Non-spanning sets give 0.
inline std::uint64_t eta_star_via_order(const Configuration& H, const Order& order, const EtaOptions& opt = {}) {
    validate_order(order, H.size());
    if (H.empty()) return 0;
    const auto P = H.reordered(order);
    SpanOracle root(P);
    if (!has_full_span(root)) return 0;
    const std::size_t n = P.ambient_dim();
    if (n == 0) return 1;
    const std::size_t shards = P.size() - 1;
    return sharded_reduce(
        shards, opt.jobs, std::uint64_t{0},
        [&](std::size_t s) -> std::uint64_t {
            std::optional<SpanOracle> local;
            if (opt.jobs > 1) local.emplace(P);
            SpanOracle& o = local ? *local : root;
            const std::size_t x = s + 1;
            const Mask first = o.closure(bit(x));
            if (lowest(first) != x) return 0;
            return detail::count_eta_chains(o, first, 1, n);
        },
        [](std::uint64_t a, std::uint64_t b) { return a + b; });
}

inline std::uint64_t eta_star_via_order(const Configuration& H) {
    return eta_star_via_order(H, identity_order(H.size()));
}

inline std::uint64_t eta_star_via_homology(const Configuration& H, const HomologyOptions& opt = {}) {
    return homology_rank(H, static_cast<long>(H.ambient_dim()) - 1, opt);
}

struct FlagProfile {
    std::vector<std::size_t> q;  // (q_s, ..., q_1)
    Integer product = 1;         // W[H]
};

/// q_l = number of points of H in the span of the last l entries of W.
inline FlagProfile flag_profile(const Configuration& H, const Tuple& W) {
    SpanOracle o(H);
    Mask suffix = 0;
    FlagProfile f;
    f.q.resize(W.size());
    for (std::size_t l = W.size(); l-- > 0;) {
        if (W[l] >= H.size()) throw PreconditionViolation("flag_profile: index out of range");
        if (suffix & bit(W[l])) throw PreconditionViolation("flag_profile: repeated entry");
        suffix |= bit(W[l]);
        if (o.rank(suffix) != W.size() - l) throw PreconditionViolation("flag_profile: tuple is degenerate");
        f.q[l] = popcount(o.closure(suffix));
        f.product *= f.q[l];
    }
    return f;
}

inline Rational probability_total(const ProbabilityVector& p) {
    Rational s = 0;
    for (const auto& x : p) s += x;
    return s;
}

namespace detail {

// Walks every ordered independent n-tuple from the back, recording how many
// tuples share each (hyperplane, W[H]) pair.
inline void collect_flags(SpanOracle& o, Mask suffix, Mask span, std::size_t rank, std::size_t n,
                          const Integer& product, std::map<Mask, std::map<Integer, std::uint64_t>>& acc) {
    if (rank == n) {
        ++acc[span][product];
        return;
    }
    for (std::size_t x = 0; x < o.size(); ++x) {
        if (span & bit(x)) continue;
        const Mask next = o.closure(suffix | bit(x));
        collect_flags(o, suffix | bit(x), next, rank + 1, n, product * popcount(next), acc);
    }
}

}  // namespace detail

/// Sum over all ordered independent n-tuples W of (1 - p(span W)) / W[H].
/// Every term vanishes when H does not span.
inline Rational eta_star_via_flags(const Configuration& H, const ProbabilityVector& p) {
    if (p.size() != H.size()) throw PreconditionViolation("eta_star_via_flags: probability vector has wrong length");
    if (probability_total(p) != 1) throw PreconditionViolation("eta_star_via_flags: probabilities must sum to 1");
    SpanOracle o(H);
    std::map<Mask, std::map<Integer, std::uint64_t>> acc;
    detail::collect_flags(o, 0, 0, 0, H.ambient_dim(), Integer(1), acc);
    Rational total = 0;
    for (const auto& [span, by_product] : acc) {
        Rational weight = 0;
        for (const auto& [prod, count] : by_product) weight += Rational(Integer(count), prod);
        Rational numerator = 1;
        for (auto j : mask_indices(span)) numerator -= p[j];
        total += numerator * weight;
    }
    return total;
}

inline ProbabilityVector uniform_probability(std::size_t T) {
    return ProbabilityVector(T, Rational(1, static_cast<long long>(T)));
}

/// A random vector of rationals summing to 1. With allow_negative at least
/// one entry is negative; otherwise all entries are positive.
inline ProbabilityVector random_probability(std::size_t T, std::mt19937_64& rng, bool allow_negative) {
    if (T == 0) throw PreconditionViolation("random_probability: empty support");
    if (allow_negative && T < 2) throw PreconditionViolation("random_probability: need two points for a negative entry");
    while (true) {
        std::vector<long long> w(T);
        Integer total = 0;
        for (auto& x : w) {
            x = uniform_int(rng, allow_negative ? -6 : 1, 9);
            total += x;
        }
        if (total == 0) continue;
        ProbabilityVector p;
        for (auto x : w) p.push_back(Rational(x) / Rational(total));
        const bool has_negative = std::any_of(p.begin(), p.end(), [](const Rational& x) { return x < 0; });
        if (has_negative == allow_negative) return p;
    }
}

struct SupermodularCheck {
    std::uint64_t eta_H = 0, eta_Hu = 0, eta_Hv = 0, eta_Huv = 0;
    bool holds = false;
};

/// eta(H+u) - eta(H) <= eta(H+u+v) - eta(H+v).
inline SupermodularCheck check_supermodular(const Configuration& H, const ProjectivePoint& u,
                                            const ProjectivePoint& v) {
    if (u == v) throw PreconditionViolation("check_supermodular: u and v must differ");
    if (H.contains(u) || H.contains(v)) throw PreconditionViolation("check_supermodular: u, v must lie outside H");
    SupermodularCheck c;
    c.eta_H = eta_star_via_order(H);
    c.eta_Hu = eta_star_via_order(H.with_point(u));
    c.eta_Hv = eta_star_via_order(H.with_point(v));
    c.eta_Huv = eta_star_via_order(H.with_point(u).with_point(v));
    c.holds = Integer(c.eta_Hu) - c.eta_H <= Integer(c.eta_Huv) - c.eta_Hv;
    return c;
}

struct ProjectionRecursionCheck {
    std::uint64_t lhs = 0;       // eta_n(H + u)
    std::uint64_t eta_H = 0;     // eta_n(H)
    std::uint64_t eta_proj = 0;  // eta_{n-1} of the projection of H along u
    std::size_t image_size = 0;
    bool holds = false;
};

/// eta_n(H + u) = eta_n(H) + eta_{n-1}(H projected along u).
inline ProjectionRecursionCheck check_projection_recursion(const Configuration& H, const ProjectivePoint& u) {
    if (H.ambient_dim() < 1) throw PreconditionViolation("check_projection_recursion: n must be >= 1");
    ProjectionRecursionCheck c;
    const auto proj = project_config(H, u);
    c.lhs = eta_star_via_order(H.with_point(u));
    c.eta_H = eta_star_via_order(H);
    c.eta_proj = eta_star_via_order(proj.image);
    c.image_size = proj.image.size();
    c.holds = c.lhs == c.eta_H + c.eta_proj;
    return c;
}

/// Number of n-subsets S of H such that w together with S spans.
inline std::uint64_t binom_eta_sum(const Configuration& H, const ProjectivePoint& w) {
    if (w.length() != H.vector_dim()) throw DimensionMismatch("binom_eta_sum: point has wrong length");
    const auto idx = H.index_of(w);
    const Configuration Hw = idx ? H : H.with_point(w);
    const std::size_t wi = idx ? *idx : H.size();
    SpanOracle o(Hw);
    const std::size_t n = H.ambient_dim();
    std::uint64_t count = 0;
    for_each_submask_of_size(full_mask(H.size()), n, [&](Mask S) {
        if (!(S & bit(wi)) && o.rank(S | bit(wi)) == n + 1) ++count;
    });
    return count;
}

/// The subsets U (given as point indices) of the order with w = order[0]:
/// independent, w outside span U. Returns U sorted by decreasing position,
/// i.e. (u_{i_1}, ..., u_{i_s}) with u_{i_1} the pi-largest.
inline std::vector<std::size_t> normalize_pi_subset(const Configuration& H, const Order& order,
                                                    const std::vector<std::size_t>& U, SpanOracle& o) {
    const auto pos = positions_of(order);
    std::vector<std::size_t> sorted = U;
    for (auto i : sorted)
        if (i >= H.size()) throw PreconditionViolation("pi-subset: index out of range");
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return pos[a] > pos[b]; });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw PreconditionViolation("pi-subset: repeated entry");
    const Mask m = indices_mask(sorted);
    const std::size_t w = order.at(0);
    if (sorted.empty() || (m & bit(w))) throw PreconditionViolation("pi-subset: must be nonempty and avoid w");
    if (o.rank(m) != sorted.size()) throw PreconditionViolation("pi-subset: points are dependent");
    if (o.in_span(w, m)) throw PreconditionViolation("pi-subset: w lies in the span");
    return sorted;
}

namespace detail {

// Whether span(U_s) meets the points strictly before min(U_s), for s = 1..|U|.
inline std::vector<bool> pi_meets(const Configuration& H, const Order& order, const std::vector<std::size_t>& U,
                                  SpanOracle& o) {
    const auto sorted = normalize_pi_subset(H, order, U, o);
    const auto pos = positions_of(order);
    std::vector<bool> meets;
    Mask m = 0;
    for (auto u : sorted) {
        m |= bit(u);
        bool hit = false;
        for (auto j : mask_indices(o.closure(m)))
            if (pos[j] < pos[u]) hit = true;
        meets.push_back(hit);
    }
    return meets;
}

}  // namespace detail

inline bool is_pi_closed(const Configuration& H, const Order& order, const std::vector<std::size_t>& U) {
    validate_order(order, H.size());
    SpanOracle o(H);
    const auto meets = detail::pi_meets(H, order, U, o);
    return std::none_of(meets.begin(), meets.end(), [](bool b) { return b; });
}

inline bool is_pi_boundary(const Configuration& H, const Order& order, const std::vector<std::size_t>& U) {
    validate_order(order, H.size());
    SpanOracle o(H);
    const auto meets = detail::pi_meets(H, order, U, o);
    return meets.back() && std::none_of(meets.begin(), meets.end() - 1, [](bool b) { return b; });
}

struct BoundaryPartitionCheck {
    std::size_t images = 0;           // |t_hat(C^pi_{n;!=0}(H;w))|
    std::size_t boundary_subsets = 0;  // boundary subsets U with a nonempty block
    std::size_t covered = 0;          // tuples with at least one boundary suffix
    std::size_t overlaps = 0;         // tuples with more than one boundary suffix
    bool injective = false;
    bool holds = false;
};

/// Checks that t_hat(C^pi_{n;!=0}(H;w)) is the disjoint union of the blocks
/// indexed by pi-boundary subsets U of sizes 2..n, where the block of U is the
/// image of the tuples of C^pi_{n;!=0}(H;w) ending in U.
inline BoundaryPartitionCheck check_boundary_partition(const Configuration& H, const Order& order, std::size_t w,
                                                       const HomologyOptions& opt = {}) {
    validate_order(order, H.size());
    if (order.at(0) != w) throw PreconditionViolation("check_boundary_partition: w must come first in the order");
    const std::size_t n = H.ambient_dim();
    const auto tuples = enumerate_Cpi_nonzero(H, order, w, opt);
    BoundaryPartitionCheck c;
    std::set<Tuple> images;
    std::set<std::vector<std::size_t>> blocks;
    std::set<Tuple> union_of_blocks;
    for (const auto& D : tuples) {
        const auto img = t_hat(D, H, order);
        images.insert(img);
        std::size_t hits = 0;
        for (std::size_t s = 2; s <= n; ++s) {
            std::vector<std::size_t> U(D.end() - static_cast<std::ptrdiff_t>(s), D.end());
            SpanOracle o(H);
            const Mask m = indices_mask(U);
            if (o.rank(m) != s || o.in_span(w, m)) continue;
            if (!is_pi_boundary(H, order, U)) continue;
            ++hits;
            std::sort(U.begin(), U.end());
            blocks.insert(U);
            union_of_blocks.insert(img);
        }
        if (hits >= 1) ++c.covered;
        if (hits > 1) ++c.overlaps;
    }
    c.images = images.size();
    c.boundary_subsets = blocks.size();
    c.injective = images.size() == tuples.size();
    c.holds = c.injective && c.overlaps == 0 && c.covered == tuples.size() && union_of_blocks == images;
    return c;
}

/// Right-hand side of the upper bound on rank H_n(K, K_{n-1}) obtained by
/// averaging over all orders that start with w.
inline Rational relative_rank_bound_rhs(const Configuration& H, std::size_t w, std::size_t max_points = 10) {
    if (w >= H.size()) throw PreconditionViolation("relative_rank_bound_rhs: index out of range");
    if (H.size() > max_points) throw BudgetExceeded("relative_rank_bound_rhs: too many points");
    SpanOracle o(H);
    if (!has_full_span(o)) throw PreconditionViolation("relative_rank_bound_rhs: points do not span");
    const long long T = static_cast<long long>(H.size());
    const std::size_t n = H.ambient_dim();
    auto fact = [](long long x) { return factorial(static_cast<std::uint64_t>(x)); };
    Rational sum = 0;
    for (std::size_t k = 0; k + 2 <= n; ++k) {
        const std::size_t s = n - k;
        // ordered s-tuples U = (u_{i_s}, ..., u_{i_1}); q_l uses the last l entries
        std::vector<std::size_t> U(s);
        std::vector<char> used(H.size(), 0);
        auto visit = [&](auto&& self, std::size_t depth, Mask suffix) -> void {
            if (depth == s) {
                if (o.in_span(w, suffix)) return;
                std::vector<long long> q(s + 1, 0);  // q[l] for l = 1..s
                Mask m = 0;
                for (std::size_t l = 1; l <= s; ++l) {
                    m |= bit(U[s - l]);
                    q[l] = static_cast<long long>(popcount(o.closure(m)));
                }
                const long long qs = q[s], qs1 = q[s - 1];
                Integer denom = 1;
                for (std::size_t l = 1; l < s; ++l) denom *= q[l];
                const long long gap = qs - qs1 - 1;
                Rational inner = 0;
                for (long long d = static_cast<long long>(k) + 3; d <= T - qs1; ++d) {
                    const Integer A = (binomial(T - qs1 - 2, gap) - binomial(T - qs1 - d, gap)) *
                                      (gap >= 0 ? fact(gap) : Integer(0));
                    const Integer term = fact(T - d) * fact(T - qs - 1) / fact(T - qs1 - d) * A *
                                         binomial(d - 2, static_cast<long long>(k));
                    inner += Rational(term);
                }
                sum += inner / Rational(denom);
                return;
            }
            for (std::size_t x = 0; x < H.size(); ++x) {
                if (used[x] || x == w) continue;
                const Mask next = suffix | bit(x);
                if (o.rank(next) != popcount(next)) continue;
                used[x] = 1;
                U[s - 1 - depth] = x;
                self(self, depth + 1, next);
                used[x] = 0;
            }
        };
        visit(visit, 0, 0);
    }
    return sum / Rational(fact(T - 1)) + Rational(static_cast<long long>(enumerate_Dpi(H, w)));
}

struct RelativeRankBoundCheck {
    std::size_t rank_rel = 0;
    Rational rhs = 0;
    bool holds = false;
};

inline RelativeRankBoundCheck check_relative_rank_bound(const Configuration& H, std::size_t w) {
    RelativeRankBoundCheck c;
    c.rank_rel = relative_ranks(H).rank_rel;
    c.rhs = relative_rank_bound_rhs(H, w);
    c.holds = Rational(static_cast<long long>(c.rank_rel)) <= c.rhs;
    return c;
}

struct SymmetrizedFlagCheck {
    std::size_t k = 0;
    std::size_t m = 0;
    Rational sym = 0;
    Rational bound = 0;
    bool holds = false;
};

/// Sum of 1/W_sigma[H] over all reorderings of the independent k-tuple W,
/// against k/(k+m) where k+m points of H lie in span W.
inline SymmetrizedFlagCheck symmetrized_flag_bound(const Configuration& H, const Tuple& W) {
    SymmetrizedFlagCheck c;
    c.k = W.size();
    if (c.k == 0) throw PreconditionViolation("symmetrized_flag_bound: empty tuple");
    auto perm = W;
    std::sort(perm.begin(), perm.end());
    do {
        const auto f = flag_profile(H, perm);
        c.sym += Rational(Integer(1), f.product);
        c.m = f.q.front() - c.k;
    } while (std::next_permutation(perm.begin(), perm.end()));
    c.bound = Rational(static_cast<long long>(c.k), static_cast<long long>(c.k + c.m));
    c.holds = c.sym <= c.bound;
    return c;
}

}  // namespace hyperarr
