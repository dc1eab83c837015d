#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "recomp/saturating.hpp"
#include "recomp/symbols.hpp"

namespace recomp::explicit_algos {

/// The compression schedule on plain letter strings, i.e. the uncompressed
/// counterpart of the grammar algorithms. Slow but transparent: it referees
/// the grammar versions in tests and lets the end-fixing replacement tables
/// be exercised in isolation. Positions stay recoverable because every
/// letter's weight (the length of the input string it stands for) lives in
/// the shared SymbolTable.

using Word = std::vector<Letter>;
using PairMap = std::map<std::pair<Letter, Letter>, Letter>;
using BlockMap = std::map<std::pair<Letter, std::uint64_t>, Letter>;

// ---------------------------------------------------------------------------
// Primitive compressions

/// Replace every occurrence of ab (a != b) by c in one left-to-right sweep.
/// Occurrences of one fixed pair never overlap, so the sweep is canonical.
inline void compress_pair(Word& w, Letter a, Letter b, Letter c) {
    assert(a != b);
    std::size_t out = 0;
    for (std::size_t i = 0; i < w.size();) {
        if (i + 1 < w.size() && w[i] == a && w[i + 1] == b) {
            w[out++] = c;
            i += 2;
        } else {
            w[out++] = w[i++];
        }
    }
    w.resize(out);
}

inline bool contains_pair(const Word& w, Letter a, Letter b) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == a && w[i + 1] == b) return true;
    return false;
}

/// One parallel pair round over a two-sided letter split: every occurrence
/// present at round start of xy with left(x), right(y), x != y becomes the
/// fresh letter for (x, y). Callers keep the two sides disjoint, so
/// qualifying occurrences cannot overlap and parallel replacement is well
/// defined; `round_start` (symbol count when the round began) excludes
/// letters minted within the round. `map` is shared across the words of an
/// instance so both agree on fresh letters.
template <class LeftPred, class RightPred>
void pair_round(Word& w, Letter round_start, LeftPred left, RightPred right,
                SymbolTable& symbols, PairMap& map) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < w.size();) {
        if (i + 1 < w.size()) {
            Letter x = w[i], y = w[i + 1];
            if (x != y && x < round_start && y < round_start && left(x) && right(y)) {
                auto [it, inserted] = map.try_emplace({x, y}, kNoLetter);
                if (inserted)
                    it->second = symbols.fresh(sat_add(symbols.weight(x), symbols.weight(y)));
                w[out++] = it->second;
                i += 2;
                continue;
            }
        }
        w[out++] = w[i++];
    }
    w.resize(out);
}

/// Replace every maximal block a^m, m >= 2, of an eligible letter by the
/// fresh letter for (a, m), of weight m * weight(a). `map` is shared across
/// the words of an instance.
template <class Eligible>
void block_round(Word& w, Eligible eligible, SymbolTable& symbols,
                 BlockMap& map) {
    std::size_t out = 0;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i + 1;
        while (j < w.size() && w[j] == w[i]) ++j;
        const std::uint64_t m = j - i;
        if (m >= 2 && eligible(w[i])) {
            auto [it, inserted] = map.try_emplace({w[i], m}, kNoLetter);
            if (inserted) it->second = symbols.fresh(sat_mul(m, symbols.weight(w[i])));
            w[out++] = it->second;
        } else {
            for (std::size_t k = i; k < j; ++k) w[out++] = w[k];
        }
        i = j;
    }
    w.resize(out);
}

/// Distinct ordered pairs xy, x != y, both under the watermark, present in
/// either word, ascending. The compression stage walks this list in order.
inline std::vector<std::pair<Letter, Letter>> collect_pairs(const Word& a, const Word& b,
                                                            Letter watermark) {
    std::vector<std::pair<Letter, Letter>> out;
    auto scan = [&](const Word& w) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            Letter x = w[i], y = w[i + 1];
            if (x != y && x < watermark && y < watermark) out.emplace_back(x, y);
        }
    };
    scan(a);
    scan(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Equality by recompression

/// One phase: block compression for all letters, then pair compression of
/// every pair present at the start of the pair stage. Any two letters that
/// are adjacent at phase start lose at least one of the two to compression,
/// which bounds the new length of each word w by (2|w| + 1) / 3.
inline void et_phase(Word& a, Word& b, SymbolTable& symbols) {
    const Letter watermark = static_cast<Letter>(symbols.size());
    auto eligible = [watermark](Letter l) { return l < watermark; };
    BlockMap blocks;
    block_round(a, eligible, symbols, blocks);
    block_round(b, eligible, symbols, blocks);
    for (auto [x, y] : collect_pairs(a, b, watermark)) {
        // Earlier pairs may have consumed every occurrence; mint lazily.
        if (!contains_pair(a, x, y) && !contains_pair(b, x, y)) continue;
        Letter c = symbols.fresh(sat_add(symbols.weight(x), symbols.weight(y)));
        compress_pair(a, x, y, c);
        compress_pair(b, x, y, c);
    }
}

struct EtStats {
    std::size_t phases = 0;
};

/// Equality test by iterated compression. Both words shrink by a constant
/// factor per phase, and every compression step is injective, so the final
/// letter-by-letter comparison decides equality of the originals.
inline bool words_equal_recompress(Word a, Word b, Letter alphabet, EtStats* stats = nullptr) {
    SymbolTable symbols(alphabet);
    while (a.size() > 1 && b.size() > 1) {
        const std::size_t before = a.size() + b.size();
        et_phase(a, b, symbols);
        assert(a.size() + b.size() < before);
        (void)before;
        if (stats) ++stats->phases;
    }
    return a == b;
}

// ---------------------------------------------------------------------------
// End fixing

namespace detail {

/// Walk w, leave non-`a` letters alone and feed each maximal a-block's
/// length to `emit`, which appends the replacement letters.
template <class EmitRow>
void replace_blocks_of(Word& w, Letter a, EmitRow emit) {
    Word out;
    out.reserve(w.size());
    std::size_t i = 0;
    while (i < w.size()) {
        if (w[i] != a) {
            out.push_back(w[i++]);
            continue;
        }
        std::size_t j = i + 1;
        while (j < w.size() && w[j] == a) ++j;
        emit(static_cast<std::uint64_t>(j - i), out);
        i = j;
    }
    w = std::move(out);
}

/// Shared marker letters a_m for one fixing pass: same m, same letter.
/// a_1 is the original letter itself. The weight is m * w(a) below the
/// pattern-side length and (m - cut) * w(a) above it, where `cut` letters
/// are carried by the marker emitted next to a_m.
class MarkerMints {
public:
    MarkerMints(Letter a, std::uint64_t cut, SymbolTable& symbols)
        : a_(a), cut_(cut), symbols_(symbols) {}

    Letter of(std::uint64_t m) {
        if (m == 1) return a_;
        auto [it, inserted] = map_.try_emplace(m, kNoLetter);
        if (inserted) {
            // Up to the cut a_m stands for the whole block; above it the
            // marker emitted beside a_m carries `cut` letters of the block.
            std::uint64_t units = m <= cut_ ? m : m - cut_;
            it->second = symbols_.fresh(sat_mul(units, symbols_.weight(a_)));
        }
        return it->second;
    }

private:
    Letter a_;
    std::uint64_t cut_;
    SymbolTable& symbols_;
    std::map<std::uint64_t, Letter> map_;
};

inline void strip_front(Word& text, Letter l, SymbolTable& symbols,
                        std::uint64_t& stripped_prefix) {
    if (!text.empty() && text.front() == l) {
        stripped_prefix = sat_add(stripped_prefix, symbols.weight(l));
        text.erase(text.begin());
    }
}

inline void strip_back(Word& text, Letter l) {
    if (!text.empty() && text.back() == l) text.pop_back();
}

}  // namespace detail

/// Fix the pattern ends when its first and last letters differ. Afterwards
/// the first and last pattern letters are fresh to this pass (or the pattern
/// shrank to one letter), so the phase's compressions cannot spoil an
/// occurrence boundary.
inline void fix_ends_different(Word& text, Word& pattern, SymbolTable& symbols,
                               std::uint64_t& stripped_prefix) {
    assert(pattern.size() >= 2 && pattern.front() != pattern.back());
    const Letter pass_start = static_cast<Letter>(symbols.size());
    const Letter a = pattern.front();

    if (pattern[1] != a) {  // leading pair ab, a != b
        const Letter b = pattern[1];
        Letter c = symbols.fresh(sat_add(symbols.weight(a), symbols.weight(b)));
        compress_pair(text, a, b, c);
        compress_pair(pattern, a, b, c);
    } else {  // leading block a^ell, ell >= 2
        std::uint64_t ell = 1;
        while (ell < pattern.size() && pattern[ell] == a) ++ell;
        detail::MarkerMints mints(a, ell, symbols);
        const Letter marker = mints.of(ell);
        auto emit = [&](std::uint64_t m, Word& out) {
            if (m <= ell) {
                out.push_back(mints.of(m));
            } else {
                out.push_back(mints.of(m));  // carries m - ell units
                out.push_back(marker);
            }
        };
        detail::replace_blocks_of(text, a, emit);
        detail::replace_blocks_of(pattern, a, emit);
        // A trailing marker cannot begin an occurrence: the pattern
        // continues past it but the text does not.
        detail::strip_back(text, marker);
    }
    if (pattern.size() < 2) return;

    // The end, symmetrically. Fixing the beginning may have compressed the
    // last letter away already (then it is fresh and we are done) or
    // replaced the second-to-last letter (then the pair below simply has a
    // fresh left letter).
    const Letter z = pattern.back();
    if (z >= pass_start) return;
    std::uint64_t r = 1;
    while (r < pattern.size() && pattern[pattern.size() - 1 - r] == z) ++r;
    if (r == 1) {
        const Letter x = pattern[pattern.size() - 2];
        Letter c = symbols.fresh(sat_add(symbols.weight(x), symbols.weight(z)));
        compress_pair(text, x, z, c);
        compress_pair(pattern, x, z, c);
    } else {
        detail::MarkerMints mints(z, r, symbols);
        const Letter marker = mints.of(r);
        auto emit = [&](std::uint64_t m, Word& out) {
            if (m <= r) {
                out.push_back(mints.of(m));
            } else {
                out.push_back(marker);  // marker left: blocks end the pattern
                out.push_back(mints.of(m));
            }
        };
        detail::replace_blocks_of(text, z, emit);
        detail::replace_blocks_of(pattern, z, emit);
        // A leading marker cannot end an occurrence; removing it shifts
        // every later position by its weight.
        detail::strip_front(text, marker, symbols, stripped_prefix);
    }
}

/// Fix the pattern ends when first and last letters are both `a`, so the
/// pattern is a^ell u a^r with nonempty u. The pattern's own end blocks
/// become distinct markers a_L and a_R; text blocks a^m are rewritten so
/// that exactly the blocks long enough to begin (end) an occurrence offer a
/// trailing a_L (leading a_R). Three pair rounds then shrink the result.
inline void fix_ends_same(Word& text, Word& pattern, SymbolTable& symbols,
                          std::uint64_t& stripped_prefix) {
    const Letter a = pattern.front();
    assert(pattern.size() >= 2 && pattern.back() == a);
    std::uint64_t ell = 1;
    while (ell < pattern.size() && pattern[ell] == a) ++ell;
    std::uint64_t r = 1;
    while (r < pattern.size() && pattern[pattern.size() - 1 - r] == a) ++r;
    assert(ell + r < pattern.size());  // not a power of a

    const std::uint64_t w = symbols.weight(a);
    const Letter a_left = symbols.fresh(sat_mul(ell, w));
    const Letter a_right = symbols.fresh(0);  // its span is charged to a_m/a_L

    detail::MarkerMints mints(a, ell, symbols);
    auto emit = [&](std::uint64_t m, Word& out) {
        // Blocks with m >= ell can begin an occurrence (they offer a
        // trailing a_L) and blocks with m >= r can end one (leading a_R);
        // the remainder letter a_m keeps the prefix weights exact and is
        // skipped exactly when m = ell, where a_L carries the whole block.
        if (m >= r) out.push_back(a_right);
        if (m != ell) out.push_back(mints.of(m));
        if (m >= ell) out.push_back(a_left);
    };
    Word interior(pattern.begin() + static_cast<std::ptrdiff_t>(ell),
                  pattern.end() - static_cast<std::ptrdiff_t>(r));
    detail::replace_blocks_of(interior, a, emit);
    pattern.clear();
    pattern.push_back(a_left);
    pattern.insert(pattern.end(), interior.begin(), interior.end());
    pattern.push_back(a_right);
    detail::replace_blocks_of(text, a, emit);

    detail::strip_front(text, a_right, symbols, stripped_prefix);
    detail::strip_back(text, a_left);

    PairMap round1;
    Letter start = static_cast<Letter>(symbols.size());
    auto is_al = [a_left](Letter l) { return l == a_left; };
    auto not_al = [a_left](Letter l) { return l != a_left; };
    pair_round(text, start, is_al, not_al, symbols, round1);
    pair_round(pattern, start, is_al, not_al, symbols, round1);

    PairMap round2;
    start = static_cast<Letter>(symbols.size());
    auto is_ar = [a_right](Letter l) { return l == a_right; };
    auto not_ar = [a_right](Letter l) { return l != a_right; };
    pair_round(text, start, not_ar, is_ar, symbols, round2);
    pair_round(pattern, start, not_ar, is_ar, symbols, round2);

    if (r == 1 && ell > 1) {
        PairMap round3;
        start = static_cast<Letter>(symbols.size());
        auto is_a = [a](Letter l) { return l == a; };
        auto not_a = [a](Letter l) { return l != a; };
        pair_round(text, start, is_a, not_a, symbols, round3);
        pair_round(pattern, start, is_a, not_a, symbols, round3);
    }
}

/// Dispatch on whether the pattern's boundary letters agree.
/// Pre: |pattern| >= 2 and the pattern is not a power of one letter.
inline void fix_ends(Word& text, Word& pattern, SymbolTable& symbols,
                     std::uint64_t& stripped_prefix) {
    if (pattern.front() != pattern.back())
        fix_ends_different(text, pattern, symbols, stripped_prefix);
    else
        fix_ends_same(text, pattern, symbols, stripped_prefix);
}

// ---------------------------------------------------------------------------
// Full matcher

struct MatchAnswer {
    std::uint64_t count = 0;
    std::uint64_t first = 0;  ///< 0 when there is no occurrence
    std::uint64_t last = 0;
    std::vector<std::uint64_t> positions;  ///< 1-based, ascending
};

/// Pattern matching by recompression on explicit words: phases of end
/// fixing, block compression and pair compression shrink the pattern to one
/// letter whose text occurrences are the pattern occurrences; letter weights
/// translate them back to input positions.
inline MatchAnswer spm_match(Word text, Word pattern, Letter alphabet) {
    MatchAnswer ans;
    if (pattern.empty() || pattern.size() > text.size()) return ans;
    SymbolTable symbols(alphabet);
    std::uint64_t stripped_prefix = 0;

    auto finish = [&]() {
        ans.count = ans.positions.size();
        if (!ans.positions.empty()) {
            ans.first = ans.positions.front();
            ans.last = ans.positions.back();
        }
        return ans;
    };
    // Occurrences of the single pattern letter c, translated by weight.
    auto finalize_letter = [&](Letter c) {
        std::uint64_t prefix = stripped_prefix;
        for (Letter l : text) {
            if (l == c) ans.positions.push_back(sat_add(prefix, 1));
            prefix = sat_add(prefix, symbols.weight(l));
        }
        return finish();
    };
    // Pattern c^need: every maximal c-block of length m >= need holds
    // m - need + 1 occurrences, one per weight(c) stride.
    auto finalize_power = [&](Letter c, std::uint64_t need) {
        std::uint64_t prefix = stripped_prefix;
        std::size_t i = 0;
        while (i < text.size()) {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] == text[i]) ++j;
            const std::uint64_t m = j - i;
            if (text[i] == c && m >= need) {
                for (std::uint64_t k = 0; k + need <= m; ++k)
                    ans.positions.push_back(
                        sat_add(sat_add(prefix, sat_mul(k, symbols.weight(c))), 1));
            }
            prefix = sat_add(prefix, sat_mul(m, symbols.weight(text[i])));
            i = j;
        }
        return finish();
    };

    while (true) {
        if (pattern.size() == 1) return finalize_letter(pattern[0]);
        if (std::all_of(pattern.begin(), pattern.end(),
                        [&](Letter l) { return l == pattern[0]; }))
            return finalize_power(pattern[0], pattern.size());

        const std::size_t pattern_before = pattern.size();
        const Letter watermark = static_cast<Letter>(symbols.size());
        fix_ends(text, pattern, symbols, stripped_prefix);
        if (pattern.size() == 1) return finalize_letter(pattern[0]);

        auto eligible = [watermark](Letter l) { return l < watermark; };
        BlockMap blocks;
        block_round(text, eligible, symbols, blocks);
        block_round(pattern, eligible, symbols, blocks);
        for (auto [x, y] : collect_pairs(text, pattern, watermark)) {
            if (!contains_pair(text, x, y) && !contains_pair(pattern, x, y)) continue;
            Letter c = symbols.fresh(sat_add(symbols.weight(x), symbols.weight(y)));
            compress_pair(text, x, y, c);
            compress_pair(pattern, x, y, c);
        }
        assert(pattern.size() < pattern_before);
        (void)pattern_before;
    }
}

}  // namespace recomp::explicit_algos
