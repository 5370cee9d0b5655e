#pragma once

// Exact feasibility of homogeneous linear inequality systems by
// Fourier-Motzkin elimination, tracking strictness without epsilons.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/exact_linalg.hpp"
#include "hyperarr/projective.hpp"

namespace hyperarr {

/// a . x > 0 when strict, a . x >= 0 otherwise.
struct Inequality {
    IntVector a;
    bool strict = true;

    friend bool operator<(const Inequality& l, const Inequality& r) {
        if (l.a != r.a) return l.a < r.a;
        return l.strict < r.strict;
    }
};

struct FmOptions {
    std::size_t max_rows = 200'000;
};

namespace detail {

inline Inequality normalized(Inequality q) {
    if (!linalg::is_zero(q.a)) q.a = linalg::primitive(std::move(q.a));
    return q;
}

// Keeps one copy of each direction, preferring the strict form, which implies
// the non-strict one.
inline std::vector<Inequality> dedupe(std::vector<Inequality> rows) {
    std::sort(rows.begin(), rows.end(), [](const Inequality& l, const Inequality& r) {
        if (l.a != r.a) return l.a < r.a;
        return l.strict > r.strict;
    });
    std::vector<Inequality> out;
    for (auto& q : rows)
        if (out.empty() || out.back().a != q.a) out.push_back(std::move(q));
    return out;
}

}  // namespace detail

/// Whether some x satisfies every inequality of the homogeneous system.
inline bool fm_feasible(std::vector<Inequality> rows, const FmOptions& opt = {}) {
    if (rows.empty()) return true;
    const std::size_t vars = rows.front().a.size();
    for (auto& q : rows) {
        if (q.a.size() != vars) throw DimensionMismatch("fm_feasible: rows of unequal length");
        q = detail::normalized(std::move(q));
    }
    for (std::size_t v = 0; v <= vars; ++v) {
        for (const auto& q : rows)
            if (q.strict && linalg::is_zero(q.a)) return false;
        if (v == vars) break;
        rows = detail::dedupe(std::move(rows));
        std::vector<Inequality> pos, neg, next;
        for (auto& q : rows) {
            if (q.a[v] > 0)
                pos.push_back(std::move(q));
            else if (q.a[v] < 0)
                neg.push_back(std::move(q));
            else
                next.push_back(std::move(q));
        }
        for (const auto& p : pos) {
            for (const auto& m : neg) {
                Inequality c;
                c.strict = p.strict || m.strict;
                c.a.resize(vars);
                const Integer cp = -m.a[v];
                const Integer cm = p.a[v];
                for (std::size_t j = 0; j < vars; ++j) c.a[j] = cp * p.a[j] + cm * m.a[j];
                next.push_back(detail::normalized(std::move(c)));
                if (next.size() > opt.max_rows) throw BudgetExceeded("fm_feasible: row budget exceeded");
            }
        }
        rows = std::move(next);
    }
    return true;
}

/// Whether f : {+-1}^n -> {+-1} (value of the point with bit pattern c, with
/// bit n-1-i set meaning x_i = -1) is the sign of an affine form.
inline bool is_threshold_function(std::size_t n, const std::vector<int>& f) {
    if (f.size() != (std::size_t{1} << n)) throw DimensionMismatch("is_threshold_function: wrong table size");
    std::vector<Inequality> rows;
    for (std::uint64_t c = 0; c < f.size(); ++c) {
        Inequality q;
        q.a.assign(n + 1, Integer(f[c]));
        for (std::size_t i = 0; i < n; ++i)
            if ((c >> (n - 1 - i)) & 1u) q.a[i + 1] = -f[c];
        rows.push_back(std::move(q));
    }
    return fm_feasible(std::move(rows));
}

/// Number of threshold functions of n variables by testing all 2^(2^n)
/// Boolean functions.
inline std::uint64_t count_threshold_bruteforce(std::size_t n) {
    if (n > 3) throw BudgetExceeded("count_threshold_bruteforce: n must be <= 3");
    const std::size_t points = std::size_t{1} << n;
    std::uint64_t count = 0;
    std::vector<int> f(points);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << points); ++code) {
        for (std::size_t i = 0; i < points; ++i) f[i] = ((code >> i) & 1u) ? -1 : 1;
        if (is_threshold_function(n, f)) ++count;
    }
    return count;
}

}  // namespace hyperarr
