#pragma once

// Exact linear algebra over Z/Q (fraction-free elimination) and over GF(2).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperarr {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroDirection : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace linalg {

namespace detail {

template <class Row>
void require_uniform_width(std::span<const Row> rows, const char* what) {
    if (rows.empty()) return;
    const auto width = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != width)
            throw DimensionMismatch(std::string(what) + ": rows of unequal length");
}

// (pivot * a_ij - a_ic * a_rj) / prev, exact by Sylvester's identity.
inline std::int64_t bareiss_step(std::int64_t pivot, std::int64_t aij, std::int64_t aic,
                                 std::int64_t arj, std::int64_t prev) {
    const __int128 num = static_cast<__int128>(pivot) * aij - static_cast<__int128>(aic) * arj;
    const __int128 q = num / prev;
    if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("bareiss_step: 64-bit overflow");
    return static_cast<std::int64_t>(q);
}

inline Integer bareiss_step(const Integer& pivot, const Integer& aij, const Integer& aic,
                            const Integer& arj, const Integer& prev) {
    Integer num = pivot * aij - aic * arj;
    return num / prev;
}

}  // namespace detail

/// Rank of an integer matrix by fraction-free (Bareiss) elimination with
/// column skipping. Every intermediate entry is a minor of the input, so the
/// divisions are exact.
template <class Scalar>
std::size_t bareiss_rank(std::vector<std::vector<Scalar>> a) {
    if (a.empty()) return 0;
    detail::require_uniform_width<std::vector<Scalar>>(a, "bareiss_rank");
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    Scalar prev{1};
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = detail::bareiss_step(a[r][c], a[i][j], a[i][c], a[r][j], prev);
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Determinant of a square integer matrix (Bareiss).
template <class Scalar>
Scalar bareiss_det(std::vector<std::vector<Scalar>> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw DimensionMismatch("bareiss_det: matrix is not square");
    if (n == 0) return Scalar{1};
    Scalar prev{1};
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return Scalar{0};
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = detail::bareiss_step(a[k][k], a[i][j], a[i][k], a[k][j], prev);
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Scalar(-a[n - 1][n - 1]);
}

inline Integer gcd_of(std::span<const Integer> v) {
    Integer g = 0;
    for (const auto& x : v) {
        if (x == 0) continue;
        g = g == 0 ? Integer(abs(x)) : Integer(boost::multiprecision::gcd(g, x));
        if (g == 1) break;
    }
    return g;
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
inline IntVector primitive(IntVector v) {
    const Integer g = gcd_of(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

/// Multiplies a rational vector by the lcm of its denominators.
inline IntVector clear_denominators(const RatVector& v) {
    Integer l = 1;
    for (const auto& x : v) {
        const Integer& d = boost::multiprecision::denominator(x);
        l = boost::multiprecision::lcm(l, d);
    }
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v)
        out.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
    return out;
}

inline RatVector to_rational(const IntVector& v) {
    return RatVector(v.begin(), v.end());
}

inline Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(std::span<const Integer> v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline std::size_t rank_integer(std::span<const IntVector> rows) {
    detail::require_uniform_width(rows, "rank_integer");
    return bareiss_rank(std::vector<IntVector>(rows.begin(), rows.end()));
}

/// Exact rank of a list of rational rows. Empty list has rank 0.
inline std::size_t rank_rational(std::span<const RatVector> rows) {
    detail::require_uniform_width(rows, "rank_rational");
    std::vector<IntVector> m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.push_back(clear_denominators(r));
    return bareiss_rank(std::move(m));
}

/// True iff v lies in the span of `basis`.
inline bool in_span(const RatVector& v, std::span<const RatVector> basis) {
    for (const auto& b : basis)
        if (b.size() != v.size()) throw DimensionMismatch("in_span: ambient dimensions differ");
    std::vector<RatVector> rows(basis.begin(), basis.end());
    const auto r = rank_rational(rows);
    rows.push_back(v);
    return rank_rational(rows) == r;
}

/// v - ((v.w)/(w.w)) w, the orthogonal projection of v onto w's complement.
inline RatVector project_off(const IntVector& v, const IntVector& w) {
    if (v.size() != w.size()) throw DimensionMismatch("project_off: length mismatch");
    const Integer ww = dot(w, w);
    if (ww == 0) throw ZeroDirection("project_off: zero direction");
    const Rational beta(dot(v, w), ww);
    RatVector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(Rational(v[i]) - beta * Rational(w[i]));
    return out;
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
inline std::vector<RatVector> inverse(std::vector<RatVector> a) {
    const std::size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw DimensionMismatch("inverse: matrix is not square");
    std::vector<RatVector> inv(n, RatVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw std::domain_error("inverse: singular matrix");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        const Rational p = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= p;
            inv[c][j] /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

/// Dense rational matrix product.
inline std::vector<RatVector> multiply(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t inner = b.size();
    for (const auto& row : a)
        if (row.size() != inner) throw DimensionMismatch("multiply: inner dimensions differ");
    const std::size_t cols = b.front().size();
    std::vector<RatVector> out(a.size(), RatVector(cols, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

/// Integer normal of the hyperplane spanned by d-1 independent rows in Z^d,
/// via signed maximal minors; the zero vector when the rows are dependent.
inline IntVector hyperplane_normal(std::span<const IntVector> rows) {
    const std::size_t d = rows.empty() ? 0 : rows.front().size();
    if (rows.size() + 1 != d) throw DimensionMismatch("hyperplane_normal: need d-1 rows in dimension d");
    IntVector normal(d, Integer(0));
    for (std::size_t col = 0; col < d; ++col) {
        std::vector<IntVector> minor;
        minor.reserve(rows.size());
        for (const auto& r : rows) {
            IntVector m;
            m.reserve(d - 1);
            for (std::size_t j = 0; j < d; ++j)
                if (j != col) m.push_back(r[j]);
            minor.push_back(std::move(m));
        }
        const Integer det = bareiss_det(std::move(minor));
        normal[col] = (col % 2 == 0) ? det : Integer(-det);
    }
    return normal;
}

/// Incrementally maintained, fully reduced integer echelon basis. Every row is
/// primitive and vanishes on the pivot columns of all other rows, so each row
/// is a positive multiple of the matching row of the rational RREF.
class IntEchelon {
public:
    explicit IntEchelon(std::size_t width) : width_(width) {}

    std::size_t width() const { return width_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<IntVector>& rows() const { return rows_; }

    /// Adds v; returns false if v was already in the span.
    bool insert(IntVector v) {
        reduce(v);
        const auto lead = leading(v);
        if (lead == width_) return false;
        if (v[lead] < 0)
            for (auto& x : v) x = -x;
        v = primitive(std::move(v));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            auto& row = rows_[i];
            if (row[lead] == 0) continue;
            const Integer a = v[lead];
            const Integer b = row[lead];
            for (std::size_t j = 0; j < width_; ++j) row[j] = a * row[j] - b * v[j];
            row = primitive(std::move(row));
            if (row[pivots_[i]] < 0)
                for (auto& x : row) x = -x;
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(lead);
        return true;
    }

    bool contains(IntVector v) const {
        reduce(v);
        return leading(v) == width_;
    }

    /// Canonical basis: rows sorted by pivot column, primitive, pivot positive.
    std::vector<IntVector> canonical_basis() const {
        std::vector<std::size_t> idx(rows_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
        std::vector<IntVector> out;
        out.reserve(idx.size());
        for (auto i : idx) out.push_back(rows_[i]);
        return out;
    }

private:
    void reduce(IntVector& v) const {
        if (v.size() != width_) throw DimensionMismatch("IntEchelon: vector width mismatch");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto p = pivots_[i];
            if (v[p] == 0) continue;
            const Integer a = rows_[i][p];
            const Integer b = v[p];
            for (std::size_t j = 0; j < width_; ++j) v[j] = a * v[j] - b * rows_[i][j];
            v = primitive(std::move(v));
        }
    }

    std::size_t leading(const IntVector& v) const {
        for (std::size_t j = 0; j < width_; ++j)
            if (v[j] != 0) return j;
        return width_;
    }

    std::size_t width_;
    std::vector<IntVector> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::vector<IntVector> canonical_rref(std::span<const IntVector> rows) {
    if (rows.empty()) return {};
    IntEchelon e(rows.front().size());
    for (const auto& r : rows) e.insert(r);
    return e.canonical_basis();
}

/// Integer basis b_j = u_p e_j - u_j e_p (j != p) of the orthogonal complement
/// of u, where p indexes the nonzero entry of u of least magnitude.
inline std::vector<IntVector> orthogonal_complement_basis(const IntVector& u) {
    std::size_t p = u.size();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] != 0 && (p == u.size() || abs(u[i]) < abs(u[p]))) p = i;
    if (p == u.size()) throw ZeroDirection("orthogonal_complement_basis: zero vector");
    std::vector<IntVector> basis;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (j == p) continue;
        IntVector b(u.size(), Integer(0));
        b[j] = u[p];
        b[p] = -u[j];
        basis.push_back(primitive(std::move(b)));
    }
    return basis;
}

/// Dense matrix over GF(2) stored as packed bit rows.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t nrows, std::size_t ncols)
        : ncols_(ncols), words_((ncols + 63) / 64), bits_(nrows * words_, 0), nrows_(nrows) {}

    std::size_t nrows() const { return nrows_; }
    std::size_t ncols() const { return ncols_; }

    bool get(std::size_t i, std::size_t j) const {
        check(i, j);
        return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool value = true) {
        check(i, j);
        auto& w = bits_[i * words_ + j / 64];
        const std::uint64_t mask = std::uint64_t{1} << (j % 64);
        w = value ? (w | mask) : (w & ~mask);
    }
    void flip(std::size_t i, std::size_t j) {
        check(i, j);
        bits_[i * words_ + j / 64] ^= std::uint64_t{1} << (j % 64);
    }

    /// Builds a matrix from rows written as '0'/'1' strings.
    static Gf2Matrix from_strings(std::span<const std::string> rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Gf2Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw DimensionMismatch("Gf2Matrix: ragged rows");
            for (std::size_t j = 0; j < cols; ++j)
                if (rows[i][j] == '1') m.set(i, j);
        }
        return m;
    }

    Gf2Matrix transposed() const {
        Gf2Matrix t(ncols_, nrows_);
        for (std::size_t i = 0; i < nrows_; ++i)
            for (std::size_t j = 0; j < ncols_; ++j)
                if (get(i, j)) t.set(j, i);
        return t;
    }

    std::size_t nonzeros() const {
        std::size_t c = 0;
        for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    std::span<std::uint64_t> row_words(std::size_t i) { return {bits_.data() + i * words_, words_}; }
    std::span<const std::uint64_t> row_words(std::size_t i) const {
        return {bits_.data() + i * words_, words_};
    }
    std::size_t words_per_row() const { return words_; }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= nrows_ || j >= ncols_) throw std::out_of_range("Gf2Matrix: index out of range");
    }

    std::size_t ncols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::size_t nrows_ = 0;
};

/// Rank over GF(2) by bitwise Gaussian elimination.
inline std::size_t gf2_rank(Gf2Matrix m) {
    const std::size_t words = m.words_per_row();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.ncols() && rank < m.nrows(); ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t piv = rank;
        while (piv < m.nrows() && !(m.row_words(piv)[w] & bit)) ++piv;
        if (piv == m.nrows()) continue;
        if (piv != rank) {
            auto a = m.row_words(piv);
            auto b = m.row_words(rank);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        const auto prow = m.row_words(rank);
        for (std::size_t i = rank + 1; i < m.nrows(); ++i) {
            auto r = m.row_words(i);
            if (!(r[w] & bit)) continue;
            for (std::size_t k = w; k < words; ++k) r[k] ^= prow[k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace linalg
}  // namespace hyperarr
