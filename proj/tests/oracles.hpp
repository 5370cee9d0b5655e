#pragma once

// Slow, independent reference implementations used to validate the library.
// Nothing here reuses the library's elimination, lattice or homology code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "hyperarr/projective.hpp"

namespace oracle {

using hyperarr::Configuration;
using hyperarr::Integer;
using hyperarr::Rational;

/// Rank by plain Gauss-Jordan elimination over the rationals.
inline std::size_t rank(std::vector<std::vector<Rational>> a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[r][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank_of(const Configuration& H, std::uint64_t mask) {
    std::vector<std::vector<Rational>> a;
    for (std::size_t i = 0; i < H.size(); ++i)
        if ((mask >> i) & 1u) {
            std::vector<Rational> row;
            for (const auto& x : H[i].rep()) row.emplace_back(x);
            a.push_back(std::move(row));
        }
    return rank(std::move(a));
}

/// Cofactor expansion along the first row.
inline long long laplace_det(const std::vector<std::vector<long long>>& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        std::vector<std::vector<long long>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<long long> row;
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            minor.push_back(std::move(row));
        }
        det += (c % 2 ? -1 : 1) * m[0][c] * laplace_det(minor);
    }
    return det;
}

/// Chambers of the arrangement as sum over all subsets S of (-1)^{|S| - rank S}.
inline Integer whitney_chambers(const Configuration& H) {
    Integer total = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << H.size()); ++s) {
        const long long k = std::popcount(s);
        const long long r = static_cast<long long>(rank_of(H, s));
        total += ((k - r) % 2 == 0) ? 1 : -1;
    }
    return total;
}

/// |mu(bottom, top)| by the crosscut theorem: sum over spanning subsets of (-1)^{|S|}.
inline Integer crosscut_moebius_top(const Configuration& H) {
    Integer total = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << H.size()); ++s)
        if (rank_of(H, s) == H.vector_dim()) total += (std::popcount(s) % 2 == 0) ? 1 : -1;
    return abs(total);
}

inline std::size_t gf2_rank(std::vector<std::vector<int>> a) {
    if (a.empty()) return 0;
    const std::size_t rows = a.size(), cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !a[p][c]) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && a[i][c])
                for (std::size_t j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    return r;
}

/// Reduced GF(2) homology rank of the complex of non-spanning subsets.
inline std::size_t reduced_homology(const Configuration& H, long d) {
    if (H.empty() || rank_of(H, (std::uint64_t{1} << H.size()) - 1) < H.vector_dim()) return 0;
    auto cells = [&](long dim) {
        std::vector<std::uint64_t> out;
        if (dim < -1) return out;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << H.size()); ++s)
            if (std::popcount(s) == dim + 1 && rank_of(H, s) < H.vector_dim()) out.push_back(s);
        return out;
    };
    auto boundary_rank = [&](long dim) -> std::size_t {
        const auto top = cells(dim), low = cells(dim - 1);
        if (top.empty() || low.empty()) return 0;
        std::vector<std::vector<int>> m(top.size(), std::vector<int>(low.size(), 0));
        for (std::size_t i = 0; i < top.size(); ++i)
            for (std::size_t j = 0; j < low.size(); ++j)
                m[i][j] = ((low[j] & ~top[i]) == 0) && std::popcount(top[i] ^ low[j]) == 1;
        return gf2_rank(m);
    };
    return cells(d).size() - boundary_rank(d) - boundary_rank(d + 1);
}

/// eta-star straight from the order condition: increasing n-tuples of
/// positions >= 1, independent, each entry the first point (in the order) of
/// the span of itself and the later entries.
inline std::uint64_t eta_by_definition(const Configuration& H, const std::vector<std::size_t>& order) {
    const std::size_t n = H.ambient_dim();
    const std::size_t T = H.size();
    if (T == 0 || rank_of(H, (std::uint64_t{1} << T) - 1) < H.vector_dim()) return 0;
    if (n == 0) return 1;
    std::uint64_t count = 0;
    std::vector<std::size_t> pos(n);
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
        if (depth == n) {
            std::uint64_t all = 0;
            for (auto p : pos) all |= std::uint64_t{1} << order[p];
            if (rank_of(H, all) != n) return;
            for (std::size_t l = 0; l < n; ++l) {
                std::uint64_t suffix = 0;
                for (std::size_t j = l; j < n; ++j) suffix |= std::uint64_t{1} << order[pos[j]];
                const auto r = rank_of(H, suffix);
                for (std::size_t q = 0; q < pos[l]; ++q)
                    if (rank_of(H, suffix | (std::uint64_t{1} << order[q])) == r) return;
            }
            ++count;
            return;
        }
        for (std::size_t p = start; p < T; ++p) {
            pos[depth] = p;
            self(self, depth + 1, p + 1);
        }
    };
    rec(rec, 0, 1);
    return count;
}

/// Singular n x n sign matrices by Laplace expansion over all 2^{n^2} matrices.
inline std::uint64_t singular_sign_matrices(std::size_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m[i][j] = ((code >> (i * n + j)) & 1u) ? -1 : 1;
        if (laplace_det(m) == 0) ++count;
    }
    return count;
}

/// Points of E_n as signed integer rows, leading 1.
inline std::vector<std::vector<long long>> cube(std::size_t n) {
    std::vector<std::vector<long long>> out;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << n); ++c) {
        std::vector<long long> v{1};
        for (std::size_t i = 0; i < n; ++i) v.push_back(((c >> (n - 1 - i)) & 1u) ? -1 : 1);
        out.push_back(v);
    }
    return out;
}

inline std::size_t rank_rows(const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<Rational>> a;
    for (const auto& r : rows) {
        std::vector<Rational> q;
        for (auto x : r) q.emplace_back(x);
        a.push_back(std::move(q));
    }
    return rank(std::move(a));
}

/// Fraction of ordered k-tuples of distinct cube points that are dependent,
/// enumerating ordered tuples.
inline Rational delta_ordered(std::size_t n, std::size_t k) {
    const auto pts = cube(n);
    const std::size_t N = pts.size();
    std::uint64_t dep = 0, total = 0;
    std::vector<std::size_t> idx(k);
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == k) {
            ++total;
            std::vector<std::vector<long long>> rows;
            for (auto i : idx) rows.push_back(pts[i]);
            if (rank_rows(rows) < k) ++dep;
            return;
        }
        for (std::size_t i = 0; i < N; ++i) {
            if (std::find(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(depth), i) !=
                idx.begin() + static_cast<std::ptrdiff_t>(depth))
                continue;
            idx[depth] = i;
            self(self, depth + 1);
        }
    };
    rec(rec, 0);
    return Rational(Integer(dep)) / Rational(Integer(total));
}

}  // namespace oracle
