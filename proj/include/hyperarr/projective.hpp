#pragma once

// Projective points, ordered configurations, the cube configuration E_n,
// orthogonal projection of configurations and generic-position sampling.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/exact_linalg.hpp"

namespace hyperarr {

class PreconditionViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point of RP^n held by its canonical integer representative: nonzero,
/// gcd 1, first nonzero entry positive.
class ProjectivePoint {
public:
    ProjectivePoint() = default;

    static ProjectivePoint from(const IntVector& v) {
        if (linalg::is_zero(v)) throw ZeroDirection("canonicalize: zero vector");
        IntVector rep = linalg::primitive(v);
        const auto first = std::find_if(rep.begin(), rep.end(), [](const Integer& x) { return x != 0; });
        if (*first < 0)
            for (auto& x : rep) x = -x;
        ProjectivePoint p;
        p.rep_ = std::move(rep);
        return p;
    }

    static ProjectivePoint from(const RatVector& v) { return from(linalg::clear_denominators(v)); }

    static ProjectivePoint from(std::initializer_list<long long> v) {
        IntVector iv;
        for (auto x : v) iv.emplace_back(x);
        return from(iv);
    }

    const IntVector& rep() const { return rep_; }
    /// Length of the representative, i.e. n+1 for a point of RP^n.
    std::size_t length() const { return rep_.size(); }

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.rep_ == b.rep_; }
    friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
        if (a.rep_.size() != b.rep_.size()) return a.rep_.size() < b.rep_.size();
        return std::lexicographical_compare(a.rep_.begin(), a.rep_.end(), b.rep_.begin(), b.rep_.end());
    }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < rep_.size(); ++i) os << (i ? "," : "") << rep_[i];
        os << ')';
        return os.str();
    }

private:
    IntVector rep_;
};

inline ProjectivePoint canonicalize(const IntVector& v) { return ProjectivePoint::from(v); }
inline ProjectivePoint canonicalize(const RatVector& v) { return ProjectivePoint::from(v); }

/// order[pos] is the index of the point at position pos (0-based) of the
/// order pi; the identity order is the storage order of the configuration.
using Order = std::vector<std::size_t>;

inline Order identity_order(std::size_t n) {
    Order o(n);
    for (std::size_t i = 0; i < n; ++i) o[i] = i;
    return o;
}

inline Order random_order(std::size_t n, std::mt19937_64& rng) {
    Order o = identity_order(n);
    shuffle(o, rng);
    return o;
}

inline void validate_order(const Order& order, std::size_t n) {
    if (order.size() != n) throw PreconditionViolation("order: wrong length");
    std::vector<char> seen(n, 0);
    for (auto i : order) {
        if (i >= n || seen[i]) throw PreconditionViolation("order: not a permutation");
        seen[i] = 1;
    }
}

/// Ordered list of distinct points of RP^ambient_dim. The storage order is the
/// default order pi.
class Configuration {
public:
    Configuration() = default;

    Configuration(std::size_t ambient_dim, std::vector<ProjectivePoint> points)
        : ambient_dim_(ambient_dim), points_(std::move(points)) {
        std::set<ProjectivePoint> seen;
        for (const auto& p : points_) {
            if (p.length() != ambient_dim_ + 1)
                throw DimensionMismatch("Configuration: point " + p.str() + " has wrong length");
            if (!seen.insert(p).second)
                throw PreconditionViolation("Configuration: duplicate point " + p.str());
        }
    }

    static Configuration from_rows(std::size_t ambient_dim, const std::vector<IntVector>& rows) {
        std::vector<ProjectivePoint> pts;
        pts.reserve(rows.size());
        for (const auto& r : rows) pts.push_back(ProjectivePoint::from(r));
        return Configuration(ambient_dim, std::move(pts));
    }

    static Configuration from_rows(std::size_t ambient_dim,
                                   std::initializer_list<std::initializer_list<long long>> rows) {
        std::vector<ProjectivePoint> pts;
        for (auto r : rows) pts.push_back(ProjectivePoint::from(r));
        return Configuration(ambient_dim, std::move(pts));
    }

    std::size_t ambient_dim() const { return ambient_dim_; }
    /// Dimension of the linear space R^{n+1} the representatives live in.
    std::size_t vector_dim() const { return ambient_dim_ + 1; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const ProjectivePoint& operator[](std::size_t i) const { return points_.at(i); }
    const std::vector<ProjectivePoint>& points() const { return points_; }

    std::vector<IntVector> rows() const {
        std::vector<IntVector> out;
        out.reserve(points_.size());
        for (const auto& p : points_) out.push_back(p.rep());
        return out;
    }

    std::optional<std::size_t> index_of(const ProjectivePoint& p) const {
        for (std::size_t i = 0; i < points_.size(); ++i)
            if (points_[i] == p) return i;
        return std::nullopt;
    }
    bool contains(const ProjectivePoint& p) const { return index_of(p).has_value(); }

    Configuration with_point(const ProjectivePoint& p) const {
        auto pts = points_;
        pts.push_back(p);
        return Configuration(ambient_dim_, std::move(pts));
    }

    Configuration without(std::size_t i) const {
        auto pts = points_;
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        return Configuration(ambient_dim_, std::move(pts));
    }

    Configuration reordered(const Order& order) const {
        validate_order(order, points_.size());
        std::vector<ProjectivePoint> pts;
        pts.reserve(points_.size());
        for (auto i : order) pts.push_back(points_[i]);
        Configuration c;
        c.ambient_dim_ = ambient_dim_;
        c.points_ = std::move(pts);
        return c;
    }

    Configuration subset(Mask m) const {
        std::vector<ProjectivePoint> pts;
        for (auto i : mask_indices(m)) pts.push_back(points_.at(i));
        Configuration c;
        c.ambient_dim_ = ambient_dim_;
        c.points_ = std::move(pts);
        return c;
    }

    /// Text format: "dim N" then one point per line.
    std::string to_text() const {
        std::ostringstream os;
        os << "dim " << ambient_dim_ << '\n';
        for (const auto& p : points_) {
            for (std::size_t i = 0; i < p.rep().size(); ++i) os << (i ? " " : "") << p.rep()[i];
            os << '\n';
        }
        return os.str();
    }

    std::string content_hash() const { return hex64(fnv1a64(to_text())); }

    friend bool operator==(const Configuration& a, const Configuration& b) {
        return a.ambient_dim_ == b.ambient_dim_ && a.points_ == b.points_;
    }

private:
    std::size_t ambient_dim_ = 0;
    std::vector<ProjectivePoint> points_;
};

/// Parses the text configuration format; '#' lines and blank lines are ignored.
inline Configuration parse_configuration(std::istream& in) {
    std::string line;
    std::optional<std::size_t> dim;
    std::vector<IntVector> rows;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!dim) {
            std::string kw;
            long long d = -1;
            ls >> kw >> d;
            if (kw != "dim" || d < 0 || !ls || !(ls >> std::ws).eof())
                throw ConfigError("line " + std::to_string(lineno) + ": expected 'dim N'");
            dim = static_cast<std::size_t>(d);
            continue;
        }
        IntVector row;
        std::string tok;
        while (ls >> tok) {
            try {
                row.emplace_back(tok);
            } catch (const std::exception&) {
                throw ConfigError("line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
            }
        }
        if (row.size() != *dim + 1)
            throw ConfigError("line " + std::to_string(lineno) + ": expected " + std::to_string(*dim + 1) +
                              " coordinates");
        if (linalg::is_zero(row)) throw ConfigError("line " + std::to_string(lineno) + ": zero vector");
        rows.push_back(std::move(row));
    }
    if (!dim) throw ConfigError("missing 'dim N' header");
    try {
        return Configuration::from_rows(*dim, rows);
    } catch (const PreconditionViolation& e) {
        throw ConfigError(e.what());
    }
}

inline Configuration parse_configuration(const std::string& text) {
    std::istringstream in(text);
    return parse_configuration(in);
}

inline constexpr std::size_t kDefaultCubeLimit = 20;

/// E_n = {(1, b_1, ..., b_n) : b_i = +-1}, lexicographic in (b_1, ..., b_n)
/// with +1 before -1.
inline Configuration generate_En(std::size_t n, std::size_t limit = kDefaultCubeLimit) {
    if (n < 1) throw PreconditionViolation("generate_En: n must be >= 1");
    if (n > limit) throw BudgetExceeded("generate_En: n exceeds the configured limit");
    std::vector<ProjectivePoint> pts;
    pts.reserve(std::size_t{1} << n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        IntVector v(n + 1, Integer(1));
        for (std::size_t i = 0; i < n; ++i)
            if ((code >> (n - 1 - i)) & 1u) v[i + 1] = -1;
        pts.push_back(ProjectivePoint::from(v));
    }
    return Configuration(n, std::move(pts));
}

/// n+1 coordinate points of RP^n.
inline Configuration coordinate_simplex(std::size_t n) {
    std::vector<ProjectivePoint> pts;
    for (std::size_t i = 0; i <= n; ++i) {
        IntVector v(n + 1, Integer(0));
        v[i] = 1;
        pts.push_back(ProjectivePoint::from(v));
    }
    return Configuration(n, std::move(pts));
}

struct ProjectionResult {
    Configuration image;
    /// For each image point, the sorted source indices mapping to it.
    std::vector<std::vector<std::size_t>> preimage_classes;
    /// For each image point, the smallest source index of its class.
    std::vector<std::size_t> min_index;
};

/// Projects H orthogonally onto u's complement. Image coordinates are the
/// values of the functionals b_j . x for an integer basis {b_j} of u^perp,
/// which is a linear isomorphism u^perp -> R^n, so every span relation of the
/// projected points is preserved. Image points are ordered by the smallest
/// index of their preimage class.
inline ProjectionResult project_config(const Configuration& H, const ProjectivePoint& u) {
    if (H.ambient_dim() == 0) throw PreconditionViolation("project_config: ambient dimension is 0");
    if (u.length() != H.vector_dim()) throw DimensionMismatch("project_config: direction has wrong length");
    if (H.contains(u)) throw PreconditionViolation("project_config: direction belongs to the configuration");
    const auto basis = linalg::orthogonal_complement_basis(u.rep());
    std::map<ProjectivePoint, std::size_t> slot;
    ProjectionResult res;
    std::vector<ProjectivePoint> image;
    for (std::size_t i = 0; i < H.size(); ++i) {
        IntVector coords;
        coords.reserve(basis.size());
        for (const auto& b : basis) coords.push_back(linalg::dot(b, H[i].rep()));
        if (linalg::is_zero(coords))
            throw std::logic_error("project_config: source point parallel to the direction");
        auto p = ProjectivePoint::from(coords);
        auto [it, fresh] = slot.emplace(p, image.size());
        if (fresh) {
            image.push_back(p);
            res.preimage_classes.push_back({i});
            res.min_index.push_back(i);
        } else {
            res.preimage_classes[it->second].push_back(i);
        }
    }
    res.image = Configuration(H.ambient_dim() - 1, std::move(image));
    return res;
}

namespace detail {

// Subspaces spanned by n-subsets of H (or by H itself when |H| < n): hyperplane
// normals, plus canonical bases of lower-dimensional spans.
struct ForbiddenSpans {
    std::set<IntVector> normals;
    std::set<std::vector<IntVector>> low_rank;
    std::uint64_t subsets_checked = 0;
    bool exhaustive = true;
};

inline void add_forbidden(ForbiddenSpans& f, const std::vector<IntVector>& rows, std::size_t vector_dim) {
    if (rows.empty()) return;
    if (rows.size() + 1 == vector_dim) {
        auto normal = linalg::primitive(linalg::hyperplane_normal(rows));
        if (!linalg::is_zero(normal)) {
            f.normals.insert(ProjectivePoint::from(normal).rep());
            return;
        }
    }
    f.low_rank.insert(linalg::canonical_rref(rows));
}

inline bool avoids(const ForbiddenSpans& f, const IntVector& u) {
    for (const auto& nrm : f.normals)
        if (linalg::dot(nrm, u) == 0) return false;
    for (const auto& basis : f.low_rank) {
        linalg::IntEchelon e(u.size());
        for (const auto& r : basis) e.insert(r);
        if (e.contains(u)) return false;
    }
    return true;
}

}  // namespace detail

struct GenericityOptions {
    std::uint64_t exhaustive_budget = 1'000'000;  // max n-subsets checked exhaustively
    std::uint64_t sample_subsets = 100'000;       // random n-subsets otherwise
    std::uint32_t max_attempts = 64;
    long long coord_bound = 0;  // 0 selects 2^{n+4}
};

struct GenericPoint {
    ProjectivePoint point;
    bool probabilistic = false;
    std::uint64_t subsets_checked = 0;
    std::uint32_t attempts = 0;
};

/// Deterministic in seed: a point outside H that lies in no subspace spanned
/// by n points of H.
inline GenericPoint sample_generic_point(const Configuration& H, std::uint64_t seed,
                                         const GenericityOptions& opt = {}) {
    const std::size_t n = H.ambient_dim();
    const std::size_t d = H.vector_dim();
    if (n == 0) {
        if (H.empty()) return {ProjectivePoint::from({1}), false, 0, 1};
        throw BudgetExceeded("sample_generic_point: RP^0 has no free point");
    }
    std::mt19937_64 rng(derive_seed(seed, 0x67656e65726963ull));
    detail::ForbiddenSpans forbidden;
    const auto rows = H.rows();
    if (H.size() < n) {
        detail::add_forbidden(forbidden, rows, d);
    } else {
        const Integer subsets = binomial(static_cast<long long>(H.size()), static_cast<long long>(n));
        if (subsets <= opt.exhaustive_budget) {
            for_each_combination(H.size(), n, [&](std::span<const std::size_t> c) {
                std::vector<IntVector> sub;
                for (auto i : c) sub.push_back(rows[i]);
                detail::add_forbidden(forbidden, sub, d);
                ++forbidden.subsets_checked;
            });
        } else {
            forbidden.exhaustive = false;
            std::vector<std::size_t> idx = identity_order(H.size());
            for (std::uint64_t s = 0; s < opt.sample_subsets; ++s) {
                for (std::size_t i = 0; i < n; ++i) {
                    const auto j = static_cast<std::size_t>(
                        uniform_int(rng, static_cast<long long>(i), static_cast<long long>(H.size() - 1)));
                    std::swap(idx[i], idx[j]);
                }
                std::vector<IntVector> sub;
                for (std::size_t i = 0; i < n; ++i) sub.push_back(rows[idx[i]]);
                detail::add_forbidden(forbidden, sub, d);
                ++forbidden.subsets_checked;
            }
        }
    }
    const long long bound = opt.coord_bound > 0 ? opt.coord_bound : (1LL << std::min<std::size_t>(n + 4, 40));
    for (std::uint32_t attempt = 1; attempt <= opt.max_attempts; ++attempt) {
        IntVector u(d);
        for (auto& x : u) x = uniform_int(rng, -bound, bound);
        if (linalg::is_zero(u)) continue;
        const auto p = ProjectivePoint::from(u);
        if (H.contains(p) || !detail::avoids(forbidden, p.rep())) continue;
        return {p, !forbidden.exhaustive, forbidden.subsets_checked, attempt};
    }
    throw BudgetExceeded("sample_generic_point: no generic point found within the attempt budget");
}

/// Orthogonal projector onto a k-dimensional subspace V_k of R^{n+1}, given
/// by an integer basis of V_k. Points are carried into R^k by x -> (b_i . x).
struct Projector {
    std::size_t k = 0;
    std::vector<IntVector> basis;
    std::vector<RatVector> matrix;  // B^T (B B^T)^{-1} B
    std::string verification;       // "identity", "exhaustive" or "sampled"
    std::uint64_t subsets_checked = 0;
    std::uint32_t attempts = 0;
};

inline std::vector<RatVector> projector_matrix(const std::vector<IntVector>& basis) {
    std::vector<RatVector> b;
    for (const auto& r : basis) b.push_back(linalg::to_rational(r));
    const std::size_t k = b.size();
    const std::size_t d = k ? b.front().size() : 0;
    std::vector<RatVector> bt(d, RatVector(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < d; ++j) bt[j][i] = b[i][j];
    const auto gram_inv = linalg::inverse(linalg::multiply(b, bt));
    return linalg::multiply(linalg::multiply(bt, gram_inv), b);
}

/// Image of H under a projector, as a configuration of RP^{k-1}.
inline Configuration apply_projector(const Configuration& H, const Projector& P) {
    std::vector<ProjectivePoint> pts;
    pts.reserve(H.size());
    for (const auto& p : H.points()) {
        IntVector c;
        c.reserve(P.basis.size());
        for (const auto& b : P.basis) c.push_back(linalg::dot(b, p.rep()));
        pts.push_back(ProjectivePoint::from(c));
    }
    return Configuration(P.k - 1, std::move(pts));
}

struct ChainOptions {
    std::size_t exhaustive_max_n = 4;
    std::uint64_t sample_subsets = 100'000;
    std::uint32_t max_resamples = 32;
};

/// Projectors P_{n+1} (identity), P_n, ..., P_2 such that every independent
/// k-subset of E_n stays independent under P_k.
inline std::vector<Projector> projection_chain(std::size_t n, std::uint64_t seed, const ChainOptions& opt = {}) {
    if (n < 1) throw PreconditionViolation("projection_chain: n must be >= 1");
    const auto En = generate_En(n);
    const auto rows = En.rows();
    const std::size_t d = n + 1;
    std::vector<Projector> chain;
    {
        Projector id;
        id.k = d;
        for (std::size_t i = 0; i < d; ++i) {
            IntVector e(d, Integer(0));
            e[i] = 1;
            id.basis.push_back(e);
        }
        id.matrix = projector_matrix(id.basis);
        id.verification = "identity";
        id.attempts = 0;
        chain.push_back(std::move(id));
    }
    const long long bound = 1LL << std::min<std::size_t>(n + 4, 40);
    for (std::size_t k = n; k >= 2; --k) {
        std::mt19937_64 rng(derive_seed(seed, 0x636861696eull + k));
        bool ok = false;
        for (std::uint32_t attempt = 1; attempt <= opt.max_resamples && !ok; ++attempt) {
            std::vector<IntVector> basis(k, IntVector(d));
            for (auto& b : basis)
                for (auto& x : b) x = uniform_int(rng, -bound, bound);
            if (linalg::rank_integer(basis) != k) continue;
            Projector P;
            P.k = k;
            P.basis = basis;
            P.attempts = attempt;
            auto check = [&](std::span<const std::size_t> c) {
                std::vector<std::vector<std::int64_t>> src;
                for (auto i : c) {
                    std::vector<std::int64_t> r;
                    for (const auto& x : rows[i]) r.push_back(x.convert_to<std::int64_t>());
                    src.push_back(std::move(r));
                }
                ++P.subsets_checked;
                if (linalg::bareiss_rank(src) < k) return true;
                std::vector<IntVector> img;
                for (auto i : c) {
                    IntVector r;
                    for (const auto& b : basis) r.push_back(linalg::dot(b, rows[i]));
                    img.push_back(std::move(r));
                }
                return linalg::bareiss_det(img) != 0;
            };
            bool good = true;
            if (n <= opt.exhaustive_max_n) {
                P.verification = "exhaustive";
                for_each_combination(En.size(), k, [&](std::span<const std::size_t> c) {
                    good = check(c);
                    return good;
                });
            } else {
                P.verification = "sampled";
                std::vector<std::size_t> idx = identity_order(En.size());
                for (std::uint64_t s = 0; s < opt.sample_subsets && good; ++s) {
                    for (std::size_t i = 0; i < k; ++i) {
                        const auto j = static_cast<std::size_t>(uniform_int(
                            rng, static_cast<long long>(i), static_cast<long long>(En.size() - 1)));
                        std::swap(idx[i], idx[j]);
                    }
                    std::vector<std::size_t> c(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
                    good = check(c);
                }
            }
            if (!good) continue;
            P.matrix = projector_matrix(P.basis);
            chain.push_back(std::move(P));
            ok = true;
        }
        if (!ok) throw BudgetExceeded("projection_chain: verification failed after max resamples");
    }
    return chain;
}

/// The projector for subspace dimension k from a chain built by projection_chain.
inline const Projector& chain_at(const std::vector<Projector>& chain, std::size_t k) {
    for (const auto& p : chain)
        if (p.k == k) return p;
    throw PreconditionViolation("chain_at: no projector of that dimension");
}

struct RandomConfigOptions {
    std::size_t min_dim = 1;
    std::size_t max_dim = 4;
    std::size_t min_points = 1;
    std::size_t max_points = 10;
    long long coord_bound = 2;
    bool full_span = false;
};

/// Random configuration with small coordinates (degenerate positions are
/// common). Duplicates are dropped; with full_span, resamples until the
/// points span the whole space.
inline Configuration random_configuration(std::mt19937_64& rng, const RandomConfigOptions& opt = {}) {
    for (int tries = 0; tries < 10'000; ++tries) {
        const auto n = static_cast<std::size_t>(
            uniform_int(rng, static_cast<long long>(opt.min_dim), static_cast<long long>(opt.max_dim)));
        const auto target = static_cast<std::size_t>(
            uniform_int(rng, static_cast<long long>(opt.min_points), static_cast<long long>(opt.max_points)));
        std::set<ProjectivePoint> seen;
        std::vector<ProjectivePoint> pts;
        for (int guard = 0; pts.size() < target && guard < 1000; ++guard) {
            IntVector v(n + 1);
            for (auto& x : v) x = uniform_int(rng, -opt.coord_bound, opt.coord_bound);
            if (linalg::is_zero(v)) continue;
            auto p = ProjectivePoint::from(v);
            if (seen.insert(p).second) pts.push_back(std::move(p));
        }
        if (pts.size() < opt.min_points) continue;
        Configuration H(n, std::move(pts));
        if (opt.full_span && linalg::rank_integer(H.rows()) != n + 1) continue;
        return H;
    }
    throw BudgetExceeded("random_configuration: could not satisfy options");
}

/// A random point of RP^n outside H (coordinates in [-bound, bound]).
inline ProjectivePoint random_point_outside(const Configuration& H, std::mt19937_64& rng, long long bound = 3) {
    for (int guard = 0; guard < 100'000; ++guard) {
        IntVector v(H.vector_dim());
        for (auto& x : v) x = uniform_int(rng, -bound, bound);
        if (linalg::is_zero(v)) continue;
        auto p = ProjectivePoint::from(v);
        if (!H.contains(p)) return p;
    }
    throw BudgetExceeded("random_point_outside: space exhausted");
}

/// Named fixtures: E1..E20, simplex1..simplex8, line3 (three collinear points
/// of RP^2), line3plus (line3 with a point off the line).
inline std::optional<Configuration> builtin_configuration(const std::string& name) {
    if (name.size() >= 2 && name[0] == 'E' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        const auto n = std::stoul(name.substr(1));
        if (n >= 1 && n <= kDefaultCubeLimit) return generate_En(n);
        return std::nullopt;
    }
    if (name.rfind("simplex", 0) == 0 && name.size() > 7) {
        const auto n = std::stoul(name.substr(7));
        if (n >= 1 && n <= 8) return coordinate_simplex(n);
        return std::nullopt;
    }
    if (name == "line3") return Configuration::from_rows(2, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}});
    if (name == "line3plus") return Configuration::from_rows(2, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}, {0, 0, 1}});
    return std::nullopt;
}

}  // namespace hyperarr
