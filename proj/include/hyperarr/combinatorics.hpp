#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hyperarr/exact_linalg.hpp"

namespace hyperarr {

/// Subset of configuration indices; configurations are capped at 64 points.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxPoints = 64;

inline Mask bit(std::size_t i) { return Mask{1} << i; }
inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }
inline std::size_t lowest(Mask m) { return static_cast<std::size_t>(std::countr_zero(m)); }
inline Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (bit(n) - 1); }

inline std::vector<std::size_t> mask_indices(Mask m) {
    std::vector<std::size_t> out;
    out.reserve(popcount(m));
    while (m) {
        out.push_back(lowest(m));
        m &= m - 1;
    }
    return out;
}

inline Mask indices_mask(std::span<const std::size_t> idx) {
    Mask m = 0;
    for (auto i : idx) m |= bit(i);
    return m;
}

/// Visits every k-subset of {0..n-1} in lexicographic order. The visitor may
/// return false to stop early.
template <class Visitor>
void for_each_combination(std::size_t n, std::size_t k, Visitor&& visit) {
    if (k > n) return;
    std::vector<std::size_t> c(k);
    std::iota(c.begin(), c.end(), std::size_t{0});
    while (true) {
        if constexpr (std::is_same_v<decltype(visit(std::span<const std::size_t>(c))), bool>) {
            if (!visit(std::span<const std::size_t>(c))) return;
        } else {
            visit(std::span<const std::size_t>(c));
        }
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

/// Visits every k-subset of the set bits of `universe`, as masks.
template <class Visitor>
void for_each_submask_of_size(Mask universe, std::size_t k, Visitor&& visit) {
    const auto idx = mask_indices(universe);
    for_each_combination(idx.size(), k, [&](std::span<const std::size_t> c) {
        Mask m = 0;
        for (auto i : c) m |= bit(idx[i]);
        visit(m);
    });
}

inline Integer factorial(std::uint64_t n) {
    Integer f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Binomial coefficient; zero when k < 0, n < 0 or k > n.
inline Integer binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

/// n (n-1) ... (n-k+1)
inline Integer falling_factorial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    Integer r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r *= (n - i);
    return r;
}

inline std::uint64_t to_u64(const Integer& x) {
    if (x < 0 || x > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("value does not fit in 64 bits");
    return x.convert_to<std::uint64_t>();
}

/// FNV-1a, used for stable content hashes of inputs (cache keys, report ids).
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// SplitMix64 finalizer; derives independent per-shard seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

/// Uniform integer in [lo, hi] from a 64-bit engine, without relying on the
/// implementation-defined std::uniform_int_distribution.
inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long long>(rng());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + static_cast<long long>(x % span);
}

/// Fisher-Yates with uniform_int; deterministic across standard libraries.
template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long long>(i - 1)));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace hyperarr
