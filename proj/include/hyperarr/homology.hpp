#pragma once

// The complex K^H whose simplices are the subsets of H spanning a proper
// subspace, its reduced and relative GF(2) homology, and the combinatorial
// bases C^pi and D^pi of the relative group.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <set>
#include <unordered_map>
#include <vector>

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/projective.hpp"
#include "hyperarr/span_oracle.hpp"

namespace hyperarr {

using linalg::Gf2Matrix;
using linalg::gf2_rank;

struct HomologyOptions {
    std::size_t simplex_cap = 5'000'000;
};

/// True iff the points of S span a proper subspace.
inline bool is_simplex(SpanOracle& oracle, Mask S) { return oracle.rank(S) < oracle.vector_dim(); }

inline bool is_simplex(const Configuration& H, std::span<const std::size_t> S) {
    SpanOracle o(H);
    return is_simplex(o, indices_mask(S));
}

inline bool has_full_span(SpanOracle& oracle) { return oracle.spanning(oracle.all()); }

/// Simplices of dimension d (subsets of size d+1), in lexicographic order of
/// their sorted indices. d = -1 gives the empty simplex.
inline std::vector<Mask> simplices(SpanOracle& oracle, long d, const HomologyOptions& opt = {}) {
    std::vector<Mask> out;
    if (d < -1) return out;
    if (d == -1) {
        if (is_simplex(oracle, 0)) out.push_back(0);
        return out;
    }
    const auto k = static_cast<std::size_t>(d + 1);
    if (k > oracle.size()) return out;
    const Integer total = binomial(static_cast<long long>(oracle.size()), static_cast<long long>(k));
    if (total > opt.simplex_cap) throw BudgetExceeded("simplices: simplex count exceeds the cap");
    for_each_combination(oracle.size(), k, [&](std::span<const std::size_t> c) {
        const Mask m = indices_mask(c);
        if (k < oracle.vector_dim() || is_simplex(oracle, m)) out.push_back(m);
    });
    return out;
}

/// Boundary map from dimension d to d-1: one row per d-simplex, one column per
/// (d-1)-simplex. Degree 0 maps every vertex onto the empty simplex.
inline Gf2Matrix boundary_matrix(const std::vector<Mask>& cells, const std::vector<Mask>& faces) {
    std::unordered_map<Mask, std::size_t> index;
    index.reserve(faces.size());
    for (std::size_t i = 0; i < faces.size(); ++i) index.emplace(faces[i], i);
    Gf2Matrix m(cells.size(), faces.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (Mask x = cells[r]; x; x &= x - 1) {
            const Mask face = cells[r] & ~(x & (~x + 1));
            auto it = index.find(face);
            if (it == index.end()) throw std::logic_error("boundary_matrix: face missing from the complex");
            m.set(r, it->second);
        }
    }
    return m;
}

inline std::size_t boundary_rank(SpanOracle& oracle, long d, const HomologyOptions& opt = {}) {
    if (d <= -1) return 0;
    const auto cells = simplices(oracle, d, opt);
    if (cells.empty()) return 0;
    return gf2_rank(boundary_matrix(cells, simplices(oracle, d - 1, opt)));
}

/// Rank of the reduced homology of K^H in degree d over GF(2). A
/// configuration that does not span gives a cone, so every rank is 0.
inline std::size_t homology_rank(const Configuration& H, long d, const HomologyOptions& opt = {}) {
    if (d < -1) throw PreconditionViolation("homology_rank: degree below -1");
    SpanOracle oracle(H);
    if (H.empty() || !has_full_span(oracle)) return 0;
    const auto cells = simplices(oracle, d, opt).size();
    return cells - boundary_rank(oracle, d, opt) - boundary_rank(oracle, d + 1, opt);
}

struct RelativeRankReport {
    std::size_t rank_rel = 0;   // H_n(K, K_{n-1})
    std::size_t rank_skel = 0;  // H_{n-1}(K_{n-1})
    std::size_t rank_abs = 0;   // H_{n-1}(K)
    bool exact() const { return rank_skel == rank_rel + rank_abs; }
};

/// The three ranks of the pair (K^H, K^H_{n-1}). The skeleton has no
/// n-simplices, so the relative group is C_n(K) modulo the image of the
/// boundary from C_{n+1}(K).
inline RelativeRankReport relative_ranks(const Configuration& H, const HomologyOptions& opt = {}) {
    SpanOracle oracle(H);
    if (H.empty() || !has_full_span(oracle)) throw PreconditionViolation("relative_ranks: points do not span");
    const long n = static_cast<long>(H.ambient_dim());
    RelativeRankReport r;
    const auto top_cells = simplices(oracle, n, opt).size();
    r.rank_rel = top_cells - boundary_rank(oracle, n + 1, opt);
    const auto skel_cells = simplices(oracle, n - 1, opt).size();
    const auto d_skel = boundary_rank(oracle, n - 1, opt);
    r.rank_skel = skel_cells - d_skel;
    r.rank_abs = skel_cells - d_skel - boundary_rank(oracle, n, opt);
    return r;
}

/// Writes "rows cols nnz" followed by one "i j 1" line per nonzero entry.
inline void write_triplets(std::ostream& os, const Gf2Matrix& m) {
    os << m.nrows() << ' ' << m.ncols() << ' ' << m.nonzeros() << '\n';
    for (std::size_t i = 0; i < m.nrows(); ++i)
        for (std::size_t j = 0; j < m.ncols(); ++j)
            if (m.get(i, j)) os << i << ' ' << j << " 1\n";
}

/// An increasing (n+1)-tuple of positions of the order, as point indices.
using Tuple = std::vector<std::size_t>;

namespace detail {

inline Mask top_bits_below(Mask m, std::size_t limit) { return limit >= 64 ? m : (m & (bit(limit) - 1)); }

inline std::size_t highest(Mask m) { return 63 - static_cast<std::size_t>(std::countl_zero(m)); }

// Position-space data of one degenerate tuple: t(D) (1-based, 0 if the tuple
// has no dependent entry) and the maximal position of D(H) (or npos).
struct TupleShape {
    std::size_t t = 0;
    std::size_t w_pos = static_cast<std::size_t>(-1);
};

inline TupleShape tuple_shape(SpanOracle& pos_oracle, std::span<const std::size_t> pos) {
    TupleShape s;
    const std::size_t len = pos.size();
    Mask suffix = 0;
    // suffix after entry t (1-based) covers pos[t .. len-1] in 0-based terms.
    for (std::size_t t = len - 1; t >= 1; --t) {
        suffix |= bit(pos[t]);
        const Mask span = pos_oracle.closure(suffix);
        if (s.t == 0 && (span & bit(pos[t - 1]))) s.t = t;
        const Mask below = top_bits_below(span, pos[t]);
        if (below) {
            const auto h = highest(below);
            if (s.w_pos == static_cast<std::size_t>(-1) || h > s.w_pos) s.w_pos = h;
        }
    }
    return s;
}

}  // namespace detail

/// C^pi_n(H): increasing degenerate (n+1)-tuples whose entry at t(D) is the
/// pi-largest point of D(H). Tuples are returned as point indices.
inline std::vector<Tuple> enumerate_Cpi(const Configuration& H, const Order& order, const HomologyOptions& opt = {}) {
    validate_order(order, H.size());
    const auto P = H.reordered(order);
    SpanOracle o(P);
    if (P.empty() || !has_full_span(o)) throw PreconditionViolation("enumerate_Cpi: points do not span");
    const std::size_t k = P.vector_dim();
    if (binomial(static_cast<long long>(P.size()), static_cast<long long>(k)) > opt.simplex_cap)
        throw BudgetExceeded("enumerate_Cpi: tuple count exceeds the cap");
    std::vector<Tuple> out;
    for_each_combination(P.size(), k, [&](std::span<const std::size_t> pos) {
        const Mask m = indices_mask(pos);
        if (o.rank(m) == k) return;
        const auto shape = detail::tuple_shape(o, pos);
        if (shape.t == 0) throw std::logic_error("enumerate_Cpi: degenerate tuple without a dependent entry");
        if (pos[shape.t - 1] != shape.w_pos) return;
        Tuple tup;
        for (auto p : pos) tup.push_back(order[p]);
        out.push_back(std::move(tup));
    });
    return out;
}

/// D_n(H; w): n-subsets S of H without w such that w and S do not span.
inline std::size_t enumerate_Dpi(const Configuration& H, std::size_t w) {
    if (w >= H.size()) throw PreconditionViolation("enumerate_Dpi: index out of range");
    SpanOracle o(H);
    const std::size_t n = H.ambient_dim();
    std::size_t count = 0;
    for_each_submask_of_size(o.all() & ~bit(w), n, [&](Mask S) {
        if (o.rank(S | bit(w)) < n + 1) ++count;
    });
    return count;
}

inline Order positions_of(const Order& order) {
    Order pos(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
    return pos;
}

/// Deletes the entry at t(D) from D; D must lie in C^pi_n(H).
inline Tuple t_hat(const Tuple& D, const Configuration& H, const Order& order) {
    validate_order(order, H.size());
    if (D.size() != H.vector_dim()) throw PreconditionViolation("t_hat: wrong tuple length");
    const auto pos_of = positions_of(order);
    std::vector<std::size_t> pos;
    for (auto i : D) {
        if (i >= H.size()) throw PreconditionViolation("t_hat: index out of range");
        pos.push_back(pos_of[i]);
    }
    if (!std::is_sorted(pos.begin(), pos.end()) || std::adjacent_find(pos.begin(), pos.end()) != pos.end())
        throw PreconditionViolation("t_hat: tuple is not increasing in the order");
    SpanOracle o(H.reordered(order));
    if (o.rank(indices_mask(pos)) == pos.size()) throw PreconditionViolation("t_hat: tuple is not degenerate");
    const auto shape = detail::tuple_shape(o, pos);
    if (shape.t == 0 || pos[shape.t - 1] != shape.w_pos) throw PreconditionViolation("t_hat: tuple is not in C^pi");
    Tuple out = D;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(shape.t - 1));
    return out;
}

/// Tuples of C^pi_n(H) spanning an n-dimensional subspace that misses w.
inline std::vector<Tuple> enumerate_Cpi_nonzero(const Configuration& H, const Order& order, std::size_t w,
                                                const HomologyOptions& opt = {}) {
    SpanOracle o(H);
    std::vector<Tuple> out;
    for (auto& D : enumerate_Cpi(H, order, opt)) {
        std::vector<std::size_t> idx(D.begin(), D.end());
        const Mask m = indices_mask(idx);
        if (o.rank(m) == H.ambient_dim() && !o.in_span(w, m)) out.push_back(std::move(D));
    }
    return out;
}

}  // namespace hyperarr
