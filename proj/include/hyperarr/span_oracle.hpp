#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hyperarr/combinatorics.hpp"
#include "hyperarr/projective.hpp"

namespace hyperarr {

/// Memoized rank and closure queries on subsets (bitmasks) of one
/// configuration. Ranks are computed with 64-bit Bareiss elimination and fall
/// back to big integers on overflow. Not thread-safe; use one per worker.
class SpanOracle {
public:
    explicit SpanOracle(const Configuration& H) : dim_(H.vector_dim()), size_(H.size()) {
        if (H.size() > kMaxPoints) throw BudgetExceeded("SpanOracle: more than 64 points");
        big_ = H.rows();
        small_ok_ = true;
        for (const auto& r : big_) {
            std::vector<std::int64_t> s;
            for (const auto& x : r) {
                if (x > std::numeric_limits<std::int32_t>::max() || x < std::numeric_limits<std::int32_t>::min())
                    small_ok_ = false;
                s.push_back(small_ok_ ? x.convert_to<std::int64_t>() : 0);
            }
            small_.push_back(std::move(s));
        }
        all_ = full_mask(size_);
    }

    std::size_t size() const { return size_; }
    std::size_t vector_dim() const { return dim_; }
    Mask all() const { return all_; }

    std::size_t rank(Mask m) {
        if (m == 0) return 0;
        if (popcount(m) == 1) return 1;
        if (auto it = rank_memo_.find(m); it != rank_memo_.end()) return it->second;
        const auto r = compute_rank(m);
        rank_memo_.emplace(m, static_cast<std::uint8_t>(r));
        return r;
    }

    bool independent(Mask m) { return rank(m) == popcount(m); }
    bool spanning(Mask m) { return rank(m) == dim_; }

    /// Indices of all points lying in the span of m.
    Mask closure(Mask m) {
        if (auto it = closure_memo_.find(m); it != closure_memo_.end()) return it->second;
        const auto r = rank(m);
        Mask c = m;
        if (r < dim_) {
            for (std::size_t i = 0; i < size_; ++i)
                if (!(m & bit(i)) && compute_rank(m | bit(i)) == r) c |= bit(i);
        } else {
            c = all_;
        }
        closure_memo_.emplace(m, c);
        return c;
    }

    bool in_span(std::size_t i, Mask m) { return (closure(m) >> i) & 1u; }

    void clear() {
        rank_memo_.clear();
        closure_memo_.clear();
    }

private:
    std::size_t compute_rank(Mask m) const {
        if (small_ok_) {
            std::vector<std::vector<std::int64_t>> rows;
            for (Mask x = m; x; x &= x - 1) rows.push_back(small_[lowest(x)]);
            try {
                return linalg::bareiss_rank(std::move(rows));
            } catch (const std::overflow_error&) {
            }
        }
        std::vector<IntVector> rows;
        for (Mask x = m; x; x &= x - 1) rows.push_back(big_[lowest(x)]);
        return linalg::bareiss_rank(std::move(rows));
    }

    std::size_t dim_;
    std::size_t size_;
    Mask all_ = 0;
    bool small_ok_ = true;
    std::vector<IntVector> big_;
    std::vector<std::vector<std::int64_t>> small_;
    std::unordered_map<Mask, std::uint8_t> rank_memo_;
    std::unordered_map<Mask, Mask> closure_memo_;
};

}  // namespace hyperarr
