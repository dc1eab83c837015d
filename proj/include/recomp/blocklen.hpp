#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "recomp/saturating.hpp"
#include "recomp/symbols.hpp"

namespace recomp::blocklen {

/// Where a common length was minted. Folds of two commons inside one block
/// are tracked apart so the per-phase budget can be checked.
enum class CommonOrigin { nonterminal_block, concatenation };

struct Common {
    std::uint64_t value = 0;
    CommonOrigin origin = CommonOrigin::nonterminal_block;
};

/// Pool of common lengths for one phase. Values are interned: a power that
/// shows up in many blocks costs one entry and keeps lex comparisons exact.
class CommonTable {
public:
    std::size_t intern(std::uint64_t value, CommonOrigin origin) {
        assert(value > 0);
        auto [it, fresh] = index_.try_emplace(value, commons_.size());
        if (fresh) commons_.push_back({value, origin});
        return it->second;
    }

    std::uint64_t value(std::size_t idx) const { return commons_[idx].value; }
    const std::vector<Common>& all() const { return commons_; }
    std::size_t size() const { return commons_.size(); }

private:
    std::vector<Common> commons_;
    std::map<std::uint64_t, std::size_t> index_;
};

/// Sentinel for the zero common length: blocks assembled from explicit
/// letters alone are plain offsets.
inline constexpr std::size_t kZeroCommon = static_cast<std::size_t>(-1);

/// Length of one maximal block, kept as common + offset so that sorting can
/// charge the expensive part to the shared pool instead of each block.
struct BlockLen {
    std::size_t common = kZeroCommon;
    std::uint64_t offset = 0;

    std::uint64_t value(const CommonTable& table) const {
        std::uint64_t base = common == kZeroCommon ? 0 : table.value(common);
        return sat_add(base, offset);
    }
};

/// Appends k explicit letters to the block.
inline void add_letters(BlockLen& len, std::uint64_t k) { len.offset = sat_add(len.offset, k); }

/// Appends a compressed power (run item or absorbed power rule). A second
/// power in the same block folds everything gathered so far into a fresh
/// common, leaving offset 0.
inline void add_power(BlockLen& len, std::uint64_t exponent, CommonTable& table) {
    assert(exponent > 0);
    if (len.common == kZeroCommon) {
        len.common = table.intern(exponent, CommonOrigin::nonterminal_block);
        return;
    }
    std::uint64_t total = sat_add(len.value(table), exponent);
    len.common = table.intern(total, CommonOrigin::concatenation);
    len.offset = 0;
}

/// Counters surfaced by the bench harness; purely observational.
struct SortCounters {
    std::uint64_t commons = 0;
    std::uint64_t offsets = 0;
    std::uint64_t max_offset = 0;
    std::uint64_t redirected_cost_bits = 0;
};

/// Outcome of thinning: which commons survive and at which rank. Rank 0 is
/// the zero common, survivors get 1..k by ascending value.
class ThinResult {
public:
    ThinResult(std::vector<std::size_t> kept_idx, std::vector<std::uint64_t> kept_val,
               std::vector<std::size_t> rank)
        : kept_idx_(std::move(kept_idx)), kept_val_(std::move(kept_val)), rank_(std::move(rank)) {}

    const std::vector<std::size_t>& kept() const { return kept_idx_; }

    std::size_t rank(const BlockLen& len) const {
        if (len.common == kZeroCommon) return 0;
        assert(rank_[len.common] != kRemoved);
        return rank_[len.common];
    }

    /// Moves a length off a removed common, preserving its value. A removed
    /// common sits strictly between two kept ones (or above the last); the
    /// length goes up when it reaches the upper neighbour, down otherwise.
    void redirect(BlockLen& len, const CommonTable& table) const {
        if (len.common == kZeroCommon || rank_[len.common] != kRemoved) return;
        std::uint64_t c = table.value(len.common);
        std::uint64_t v = len.value(table);
        auto up = std::upper_bound(kept_val_.begin(), kept_val_.end(), c);
        if (up != kept_val_.end() && v >= *up) {
            len.common = kept_idx_[static_cast<std::size_t>(up - kept_val_.begin())];
            len.offset = v - *up;
            return;
        }
        if (up == kept_val_.begin()) {
            len.common = kZeroCommon;
            len.offset = v;
            return;
        }
        std::size_t below = static_cast<std::size_t>(up - kept_val_.begin()) - 1;
        len.common = kept_idx_[below];
        len.offset = v - kept_val_[below];
    }

private:
    static constexpr std::size_t kRemoved = static_cast<std::size_t>(-1);

    std::vector<std::size_t> kept_idx_;
    std::vector<std::uint64_t> kept_val_;
    std::vector<std::size_t> rank_;

    friend ThinResult thin_commons(const CommonTable&, std::uint64_t, SortCounters*);
};

/// Greedy thinning: keeps commons whose gaps (starting from 0) exceed g.
/// After every length is redirected, offsets are at most 2g and numeric
/// order coincides with lexicographic order on (rank, offset).
inline ThinResult thin_commons(const CommonTable& table, std::uint64_t g,
                               SortCounters* counters = nullptr) {
    std::vector<std::size_t> order(table.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.value(a) < table.value(b);
    });

    std::vector<std::size_t> kept_idx;
    std::vector<std::uint64_t> kept_val;
    std::vector<std::size_t> rank(table.size(), ThinResult::kRemoved);
    std::uint64_t last = 0;
    for (std::size_t idx : order) {
        std::uint64_t v = table.value(idx);
        if (v - last > g) {
            rank[idx] = kept_idx.size() + 1;
            kept_idx.push_back(idx);
            kept_val.push_back(v);
            last = v;
        }
    }

    if (counters) {
        counters->commons += table.size();
        for (const Common& c : table.all())
            counters->redirected_cost_bits += static_cast<std::uint64_t>(std::bit_width(c.value));
    }
    return ThinResult(std::move(kept_idx), std::move(kept_val), std::move(rank));
}

/// Too-long marker: a block longer than the cap takes no part in grouped
/// compression and is excluded from sorting (strict inequality; a block
/// exactly at the cap still matters).
inline bool mark_too_long(const BlockLen& len, const CommonTable& table, std::uint64_t cap) {
    return len.value(table) > cap;
}

/// Stable grouped sort of redirected lengths by (letter, rank, offset),
/// realised as counting-sort passes from the least significant key. Groups
/// in the result are exactly the classes of equal (letter, value).
template <class LetterOf>
std::vector<std::vector<std::size_t>> sort_block_lengths(const std::vector<BlockLen>& lens,
                                                         LetterOf&& letter_of,
                                                         [[maybe_unused]] const CommonTable& table,
                                                         const ThinResult& thin,
                                                         SortCounters* counters = nullptr) {
    std::vector<std::size_t> idx(lens.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});

    auto counting_pass = [&](auto key) {
        std::uint64_t max_key = 0;
        for (std::size_t i : idx) max_key = std::max(max_key, key(i));
        std::vector<std::size_t> buckets(static_cast<std::size_t>(max_key) + 2, 0);
        for (std::size_t i : idx) ++buckets[static_cast<std::size_t>(key(i)) + 1];
        for (std::size_t b = 1; b < buckets.size(); ++b) buckets[b] += buckets[b - 1];
        std::vector<std::size_t> out(idx.size());
        for (std::size_t i : idx) out[buckets[static_cast<std::size_t>(key(i))]++] = i;
        idx = std::move(out);
    };

    if (!idx.empty()) {
        counting_pass([&](std::size_t i) { return lens[i].offset; });
        counting_pass([&](std::size_t i) { return static_cast<std::uint64_t>(thin.rank(lens[i])); });
        counting_pass(
            [&](std::size_t i) { return static_cast<std::uint64_t>(letter_of(i)); });
    }

    if (counters) {
        counters->offsets += lens.size();
        for (const BlockLen& len : lens)
            counters->max_offset = std::max(counters->max_offset, len.offset);
    }

    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        std::size_t i = idx[k];
        bool boundary = groups.empty();
        if (!boundary) {
            std::size_t j = groups.back().back();
            boundary = letter_of(i) != letter_of(j) || thin.rank(lens[i]) != thin.rank(lens[j]) ||
                       lens[i].offset != lens[j].offset;
        }
        if (boundary) groups.emplace_back();
        groups.back().push_back(i);
    }
    return groups;
}

/// Exhaustive consistency check used by tests: numeric order of values must
/// match lexicographic order on (rank, offset) for every pair.
inline bool lex_order_valid(const std::vector<BlockLen>& lens, const CommonTable& table,
                            const ThinResult& thin) {
    for (const BlockLen& a : lens) {
        for (const BlockLen& b : lens) {
            bool numeric = a.value(table) >= b.value(table);
            auto ka = std::pair(thin.rank(a), a.offset);
            auto kb = std::pair(thin.rank(b), b.offset);
            if (numeric != (ka >= kb)) return false;
        }
    }
    return true;
}

}  // namespace recomp::blocklen
