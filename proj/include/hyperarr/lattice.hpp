#pragma once

// Intersection poset of a configuration (flats = spans of subsets of the
// points), its Moebius function and chamber counts.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/parallel.hpp"
#include "hyperarr/projective.hpp"
#include "hyperarr/span_oracle.hpp"

namespace hyperarr {

struct Flat {
    std::size_t dim = 0;
    std::vector<IntVector> basis;  // canonical reduced echelon form, integer rows
    Mask members = 0;              // indices of the points lying in the flat
    Integer moebius = 0;           // mu(bottom, this)

    friend bool operator==(const Flat& a, const Flat& b) { return a.basis == b.basis; }
};

struct IntersectionLattice {
    std::size_t vector_dim = 0;
    std::vector<Flat> flats;                 // graded by dim, then by members
    std::vector<std::size_t> level_offsets;  // flats of dim j start at level_offsets[j]

    const Flat& bottom() const { return flats.front(); }
    const Flat& top() const { return flats.back(); }
    std::size_t size() const { return flats.size(); }

    std::size_t count_of_dim(std::size_t j) const {
        if (j + 1 >= level_offsets.size()) return 0;
        return level_offsets[j + 1] - level_offsets[j];
    }

    std::optional<std::size_t> find(Mask members) const {
        for (std::size_t i = 0; i < flats.size(); ++i)
            if (flats[i].members == members) return i;
        return std::nullopt;
    }
};

struct LatticeOptions {
    std::size_t flat_cap = 1'000'000;
    std::size_t jobs = 1;
};

/// Fills Flat::moebius by mu(0,0) = 1, mu(0,t) = -sum_{s < t} mu(0,s).
inline void compute_moebius(IntersectionLattice& L) {
    for (std::size_t t = 0; t < L.flats.size(); ++t) {
        if (t == 0) {
            L.flats[0].moebius = 1;
            continue;
        }
        Integer sum = 0;
        const Mask mt = L.flats[t].members;
        for (std::size_t s = 0; s < t; ++s) {
            const Mask ms = L.flats[s].members;
            if (L.flats[s].dim < L.flats[t].dim && (ms & mt) == ms) sum += L.flats[s].moebius;
        }
        L.flats[t].moebius = -sum;
    }
}

inline std::map<std::size_t, Integer> moebius_values(const IntersectionLattice& L) {
    std::map<std::size_t, Integer> out;
    for (std::size_t i = 0; i < L.flats.size(); ++i) out.emplace(i, L.flats[i].moebius);
    return out;
}

/// Builds the lattice by joining every flat of one level with every point
/// outside it. A flat spanned by points of H is determined by the points it
/// contains, so closures deduplicate the next level.
inline IntersectionLattice build_lattice(const Configuration& H, const LatticeOptions& opt = {}) {
    if (H.empty()) throw PreconditionViolation("build_lattice: empty configuration");
    const auto rows = H.rows();
    IntersectionLattice L;
    L.vector_dim = H.vector_dim();
    std::vector<Mask> level{0};
    std::size_t dim = 0;
    SpanOracle oracle(H);
    while (!level.empty()) {
        L.level_offsets.push_back(L.flats.size());
        for (Mask m : level) {
            Flat f;
            f.dim = dim;
            std::vector<IntVector> gens;
            for (auto i : mask_indices(m)) gens.push_back(rows[i]);
            f.basis = linalg::canonical_rref(gens);
            f.members = m;
            L.flats.push_back(std::move(f));
            if (L.flats.size() > opt.flat_cap) throw BudgetExceeded("build_lattice: flat count exceeds the cap");
        }
        const std::size_t shards = std::min<std::size_t>(level.size(), 64);
        auto next = sharded_reduce(
            shards, opt.jobs, std::vector<Mask>{},
            [&](std::size_t s) {
                std::optional<SpanOracle> local;
                if (opt.jobs > 1) local.emplace(H);
                SpanOracle& o = local ? *local : oracle;
                std::unordered_set<Mask> seen;
                std::vector<Mask> found;
                for (std::size_t i = s; i < level.size(); i += shards) {
                    const Mask m = level[i];
                    for (std::size_t p = 0; p < H.size(); ++p) {
                        if (m & bit(p)) continue;
                        const Mask c = o.closure(m | bit(p));
                        if (seen.insert(c).second) found.push_back(c);
                    }
                }
                return found;
            },
            [](std::vector<Mask> acc, std::vector<Mask> part) {
                acc.insert(acc.end(), part.begin(), part.end());
                return acc;
            });
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = std::move(next);
        ++dim;
    }
    L.level_offsets.push_back(L.flats.size());
    compute_moebius(L);
    return L;
}

/// Number of chambers: sum of |mu(0,t)| over all flats.
inline Integer chambers_zaslavsky(const IntersectionLattice& L) {
    Integer total = 0;
    for (const auto& f : L.flats) total += abs(f.moebius);
    return total;
}

inline Integer chambers_zaslavsky(const Configuration& H, const LatticeOptions& opt = {}) {
    return chambers_zaslavsky(build_lattice(H, opt));
}

inline Integer moebius_top_abs(const IntersectionLattice& L) {
    if (L.top().dim != L.vector_dim) throw PreconditionViolation("moebius_top_abs: points do not span");
    return abs(L.top().moebius);
}

inline Integer moebius_top_abs(const Configuration& H, const LatticeOptions& opt = {}) {
    return moebius_top_abs(build_lattice(H, opt));
}

struct DeletionRestrictionOptions {
    std::size_t node_cap = 5'000'000;
};

namespace detail {

inline std::string sorted_key(const Configuration& H) {
    auto pts = H.points();
    std::sort(pts.begin(), pts.end());
    return Configuration(H.ambient_dim(), std::move(pts)).to_text();
}

inline Integer deletion_restriction(const Configuration& H, std::unordered_map<std::string, Integer>& memo,
                                    std::size_t& nodes, const DeletionRestrictionOptions& opt) {
    if (H.empty()) return 1;
    if (H.ambient_dim() == 0) return 2;
    if (H.ambient_dim() == 1) return 2 * static_cast<long long>(H.size());
    const auto key = sorted_key(H);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    if (++nodes > opt.node_cap) throw BudgetExceeded("chambers_deletion_restriction: node cap exceeded");
    const std::size_t last = H.size() - 1;
    const auto deleted = H.without(last);
    const auto restricted = project_config(deleted, H[last]).image;
    Integer r = deletion_restriction(deleted, memo, nodes, opt) + deletion_restriction(restricted, memo, nodes, opt);
    memo.emplace(key, r);
    return r;
}

}  // namespace detail

/// Chamber count by r(A) = r(A - h) + r(A^h), always removing the last point;
/// the restriction to h's hyperplane is the projection along h.
inline Integer chambers_deletion_restriction(const Configuration& H, const DeletionRestrictionOptions& opt = {}) {
    std::unordered_map<std::string, Integer> memo;
    std::size_t nodes = 0;
    return detail::deletion_restriction(H, memo, nodes, opt);
}

inline nlohmann::json lattice_to_json(const IntersectionLattice& L, const std::string& key) {
    nlohmann::json j;
    j["key"] = key;
    j["vector_dim"] = L.vector_dim;
    j["flats"] = nlohmann::json::array();
    for (const auto& f : L.flats) {
        nlohmann::json jf;
        jf["dim"] = f.dim;
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& row : f.basis) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& x : row) r.push_back(x.str());
            basis.push_back(r);
        }
        jf["basis"] = basis;
        jf["members"] = mask_indices(f.members);
        jf["moebius"] = f.moebius.str();
        j["flats"].push_back(jf);
    }
    return j;
}

inline IntersectionLattice lattice_from_json(const nlohmann::json& j) {
    IntersectionLattice L;
    L.vector_dim = j.at("vector_dim").get<std::size_t>();
    std::size_t dim = 0;
    L.level_offsets.push_back(0);
    for (const auto& jf : j.at("flats")) {
        Flat f;
        f.dim = jf.at("dim").get<std::size_t>();
        for (const auto& r : jf.at("basis")) {
            IntVector row;
            for (const auto& x : r) row.emplace_back(x.get<std::string>());
            f.basis.push_back(std::move(row));
        }
        f.members = indices_mask(jf.at("members").get<std::vector<std::size_t>>());
        f.moebius = Integer(jf.at("moebius").get<std::string>());
        while (dim < f.dim) {
            L.level_offsets.push_back(L.flats.size());
            ++dim;
        }
        L.flats.push_back(std::move(f));
    }
    L.level_offsets.push_back(L.flats.size());
    return L;
}

inline constexpr int kLatticeCacheSchema = 1;

/// Returns the cached lattice of H from cache_dir, building and storing it on
/// a miss. An empty cache_dir disables caching.
inline IntersectionLattice cached_lattice(const Configuration& H, const std::string& cache_dir,
                                          const LatticeOptions& opt = {}) {
    if (cache_dir.empty()) return build_lattice(H, opt);
    namespace fs = std::filesystem;
    const auto key = H.content_hash() + "-s" + std::to_string(kLatticeCacheSchema);
    const fs::path path = fs::path(cache_dir) / ("lattice-" + key + ".json");
    if (fs::exists(path)) {
        std::ifstream in(path);
        try {
            const auto j = nlohmann::json::parse(in);
            if (j.at("key") == key) return lattice_from_json(j);
        } catch (const std::exception&) {
        }
    }
    auto L = build_lattice(H, opt);
    fs::create_directories(cache_dir);
    std::ofstream out(path);
    out << lattice_to_json(L, key).dump() << '\n';
    return L;
}

}  // namespace hyperarr
