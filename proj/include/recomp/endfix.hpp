#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "recomp/recompress.hpp"

namespace recomp::endfix {

/// Phase-initial fixing of the pattern's boundary letters, on the grammars
/// themselves. After fixing, the pattern's first and last letters are fresh
/// to the pass, so the phase's block and pair compressions (which only touch
/// older letters) cannot split an occurrence at its ends. Boundary blocks
/// become marker letters whose weights keep every position recoverable; the
/// occurrence sets before and after are in one-to-one correspondence, with
/// positions shifted by the weight stripped off the front of the text.

enum class Mode {
    different_pair,    ///< first != last, pattern starts with a single letter
    different_block,   ///< first != last, pattern starts with a block a^l, l >= 2
    same_letter,       ///< first == last but the pattern is not a power
    pattern_is_power,  ///< pattern = a^l; the caller answers directly
};

struct EndFixPlan {
    Letter first = kNoLetter;
    Letter last = kNoLetter;
    Mode mode = Mode::pattern_is_power;
    std::uint64_t lead_len = 1;   ///< maximal first-letter prefix of the pattern
    std::uint64_t trail_len = 1;  ///< maximal last-letter suffix, at plan time
};

struct FixStats {
    std::uint64_t stripped_prefix = 0;  ///< weight removed in front of the text value
    std::uint64_t stripped_suffix = 0;  ///< weight removed behind it
};

// ---------------------------------------------------------------------------
// Marker letters

/// Weight of the marker a_m that replaces (part of) a block a^m: below the
/// pattern-side cut it carries the whole block, above it the cut letters ride
/// on the boundary marker emitted beside it. Every replacement row then
/// weighs exactly m * w(a), so text positions survive the rewrite.
inline std::uint64_t marker_weight(std::uint64_t m, std::uint64_t cut,
                                   std::uint64_t base_weight) {
    return sat_mul(m <= cut ? m : m - cut, base_weight);
}

/// The a_m letters of one fixing pass, shared by every block of the pass so
/// equal lengths get equal letters. a_1 is the base letter itself.
struct MarkerSet {
    Letter base = kNoLetter;
    std::uint64_t cut = 1;
    Letter edge = kNoLetter;  ///< a_cut, the marker blocks offer at the seam
    std::map<std::uint64_t, Letter> by_len;

    Letter of(std::uint64_t m, SymbolTable& symbols) {
        if (m == 1) return base;
        auto [it, inserted] = by_len.try_emplace(m, kNoLetter);
        if (inserted)
            it->second = symbols.fresh(marker_weight(m, cut, symbols.weight(base)));
        return it->second;
    }
};

/// Fixes the marker weight rule for one pass over blocks of `base` with the
/// given pattern-side cut, minting the seam marker a_cut up front.
inline MarkerSet assign_marker_weights(SymbolTable& symbols, Letter base,
                                       std::uint64_t cut) {
    MarkerSet set;
    set.base = base;
    set.cut = cut;
    set.edge = set.of(cut, symbols);
    return set;
}

// ---------------------------------------------------------------------------
// Planning

namespace detail {

/// Maximal boundary block of `a` in a value: its length, and whether the
/// whole value is a power of `a`.
struct EdgeBlock {
    std::uint64_t len = 0;
    bool pure = true;
};

inline EdgeBlock lead_block(const Slp& slp, RuleId root, Letter a,
                            std::vector<std::optional<EdgeBlock>>& memo) {
    if (memo[root]) return *memo[root];
    EdgeBlock out;
    for (const Item& item : slp.rules[root].body) {
        EdgeBlock part;
        if (item.is_ref())
            part = lead_block(slp, item.ref, a, memo);
        else
            part = EdgeBlock{item.letter == a ? item.explicit_len() : 0, item.letter == a};
        out.len = sat_add(out.len, part.len);
        if (!part.pure) {
            out.pure = false;
            break;
        }
    }
    memo[root] = out;
    return out;
}

inline EdgeBlock trail_block(const Slp& slp, RuleId root, Letter a,
                             std::vector<std::optional<EdgeBlock>>& memo) {
    if (memo[root]) return *memo[root];
    EdgeBlock out;
    const Body& body = slp.rules[root].body;
    for (auto it = body.rbegin(); it != body.rend(); ++it) {
        EdgeBlock part;
        if (it->is_ref())
            part = trail_block(slp, it->ref, a, memo);
        else
            part = EdgeBlock{it->letter == a ? it->explicit_len() : 0, it->letter == a};
        out.len = sat_add(out.len, part.len);
        if (!part.pure) {
            out.pure = false;
            break;
        }
    }
    memo[root] = out;
    return out;
}

/// k-th letter of the value, 1-based, for small k. Saturated counts are
/// only ever >= k, so the descent never subtracts them.
inline Letter letter_at(const Slp& slp, const SlpMeta& meta, RuleId root, std::uint64_t k) {
    for (const Item& item : slp.rules[root].body) {
        std::uint64_t n = item.is_ref() ? meta.of(item.ref).letters : item.explicit_len();
        if (n >= k) {
            if (item.is_ref()) return letter_at(slp, meta, item.ref, k);
            return item.letter;
        }
        k -= n;
    }
    assert(false && "position beyond the value");
    return kNoLetter;
}

/// k-th letter counted from the value's end, 1-based.
inline Letter letter_at_from_end(const Slp& slp, const SlpMeta& meta, RuleId root,
                                 std::uint64_t k) {
    const Body& body = slp.rules[root].body;
    for (auto it = body.rbegin(); it != body.rend(); ++it) {
        std::uint64_t n = it->is_ref() ? meta.of(it->ref).letters : it->explicit_len();
        if (n >= k) {
            if (it->is_ref()) return letter_at_from_end(slp, meta, it->ref, k);
            return it->letter;
        }
        k -= n;
    }
    assert(false && "position beyond the value");
    return kNoLetter;
}

}  // namespace detail

/// Classifies the pattern's ends and measures its boundary blocks, without
/// decompression: block lengths come from descending the derivation with
/// run shortcuts and per-rule memoization, so exponential blocks cost their
/// derivation size, not their length.
inline EndFixPlan plan_endfix(const Slp& slp, const SymbolTable& symbols) {
    SlpMeta meta = compute_meta(slp, symbols);
    const SymbolMeta& pm = meta.of(slp.pattern_axiom);
    assert(pm.letters >= 2 && "fixing needs a pattern of at least two letters");

    EndFixPlan plan;
    plan.first = pm.first;
    plan.last = pm.last;

    std::vector<std::optional<detail::EdgeBlock>> memo(slp.rules.size());
    detail::EdgeBlock lead = detail::lead_block(slp, slp.pattern_axiom, plan.first, memo);
    plan.lead_len = lead.len;
    if (lead.pure) {
        plan.mode = Mode::pattern_is_power;
        plan.trail_len = lead.len;
        return plan;
    }
    std::vector<std::optional<detail::EdgeBlock>> memo_r(slp.rules.size());
    plan.trail_len = detail::trail_block(slp, slp.pattern_axiom, plan.last, memo_r).len;
    if (plan.first != plan.last)
        plan.mode = plan.lead_len == 1 ? Mode::different_pair : Mode::different_block;
    else
        plan.mode = Mode::same_letter;
    return plan;
}

// ---------------------------------------------------------------------------
// Rewriting helpers

namespace detail {

/// Replaces every maximal stretch of `a`-valued items in the body by the
/// row emitted for its total length. Pre: no crossing blocks of `a`, so a
/// body-maximal stretch is value-maximal.
template <class EmitRow>
void replace_letter_stretches(Body& body, Letter a, EmitRow emit) {
    for (auto it = body.begin(); it != body.end();) {
        assert(!it->is_dead());
        if (it->is_ref() || it->letter != a) {
            ++it;
            continue;
        }
        std::uint64_t m = 0;
        auto cur = it;
        while (cur != body.end() && !cur->is_ref() && cur->letter == a) {
            m = sat_add(m, cur->explicit_len());
            ++cur;
        }
        std::vector<Letter> row;
        emit(m, row);
        if (row.size() == 1 && row[0] == a && m == 1) {
            it = cur;
            continue;
        }
        auto pos = body.erase(it, cur);
        for (Letter l : row) body.insert(pos, Item::make_letter(l));
        it = pos;
    }
}

/// Applies the replacement row to every alive body, optionally sparing one
/// rule (the pattern axiom, whose boundary stretches get their own letters).
template <class EmitRow>
void replace_all_stretches(Slp& slp, Letter a, EmitRow emit,
                           std::optional<RuleId> skip = std::nullopt) {
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive || (skip && *skip == r)) continue;
        replace_letter_stretches(slp.rules[r].body, a, emit);
    }
}

/// Removes one leading `l` from the text value. The letter is explicit at
/// the axiom body's front whenever the value starts with it, because block
/// uncrossing already popped boundary blocks out of every referenced rule.
/// A text reduced to that lone letter keeps it: the axiom must stay
/// nonempty, and no occurrence fits such a text anyway.
inline void strip_front_letter(Slp& slp, const SymbolTable& symbols, Letter l,
                               FixStats& out) {
    Body& body = slp.rules[slp.text_axiom].body;
    if (body.size() < 2) return;
    Item& front = body.front();
    if (front.is_ref() || front.letter != l) return;
    assert(front.is_letter() && "markers are emitted as single letters");
    out.stripped_prefix = sat_add(out.stripped_prefix, symbols.weight(l));
    if (front.is_run()) {
        if (--front.exp == 1) front = Item::make_letter(l);
    } else {
        body.pop_front();
    }
}

inline void strip_back_letter(Slp& slp, const SymbolTable& symbols, Letter l,
                              FixStats& out) {
    Body& body = slp.rules[slp.text_axiom].body;
    if (body.size() < 2) return;
    Item& back = body.back();
    if (back.is_ref() || back.letter != l) return;
    assert(back.is_letter() && "markers are emitted as single letters");
    out.stripped_suffix = sat_add(out.stripped_suffix, symbols.weight(l));
    if (back.is_run()) {
        if (--back.exp == 1) back = Item::make_letter(l);
    } else {
        body.pop_back();
    }
}

/// Compresses exactly one pair: pop makes its occurrences explicit, one scan
/// finds them, and the shared rewrite replaces them with one fresh letter.
inline void single_pair_round(Slp& slp, SymbolTable& symbols, Letter a, Letter b) {
    assert(a != b);
    recompress::Partition part(symbols.size());
    part.left[a] = 1;
    part.right[b] = 1;
    recompress::pop(slp, part);
    recompress::PairScan scan = recompress::scan_pairs(slp, symbols);
    recompress::PairScan wanted;
    if (const recompress::PairGroup* g = scan.find(a, b)) {
        assert(!g->crossing);
        wanted.groups.push_back(*g);
    }
    recompress::compress_noncrossing(slp, symbols, wanted);
}

enum class Side { left, right };

/// One parallel pair round anchored at a single letter: every pair with the
/// anchor on the given side and any other letter of the round-start alphabet
/// opposite is compressed. The pop keeps those pairs from crossing; letters
/// minted by the round itself stay out of it.
inline void anchored_round(Slp& slp, SymbolTable& symbols, Letter anchor, Side side) {
    const Letter start = static_cast<Letter>(symbols.size());
    recompress::Partition part(start);
    for (Letter l = 0; l < start; ++l) {
        if (l == anchor) continue;
        (side == Side::left ? part.right : part.left)[l] = 1;
    }
    (side == Side::left ? part.left : part.right)[anchor] = 1;
    recompress::pop(slp, part);
    recompress::PairScan scan = recompress::scan_pairs(slp, symbols, start);
    recompress::PairScan wanted;
    for (recompress::PairGroup& g : scan.groups) {
        if ((side == Side::left ? g.a : g.b) != anchor) continue;
        assert(!g.crossing);
        wanted.groups.push_back(std::move(g));
    }
    recompress::compress_noncrossing(slp, symbols, wanted);
}

/// Begin fix for a leading block a^l, l >= 2: text blocks at least as long
/// offer the seam marker a_l at their right edge, and the pattern's own
/// block becomes exactly that marker. A text value ending in the seam
/// marker sheds it: the pattern continues past the seam, the text does not.
inline void block_fix_front(Slp& slp, SymbolTable& symbols, Letter a, std::uint64_t lead,
                            FixStats& out) {
    std::vector<char> only(symbols.size(), 0);
    only[a] = 1;
    recompress::remove_crossing_blocks(slp, &only);
    MarkerSet marks = assign_marker_weights(symbols, a, lead);
    auto emit = [&](std::uint64_t m, std::vector<Letter>& row) {
        row.push_back(marks.of(m, symbols));
        if (m > lead) row.push_back(marks.edge);
    };
    replace_all_stretches(slp, a, emit);
    strip_back_letter(slp, symbols, marks.edge, out);
}

/// End fix for a trailing block z^r, r >= 2, mirrored: the seam marker sits
/// at the block's left edge, and a text value starting with it sheds it,
/// shifting every later position by the seam's weight.
inline void block_fix_back(Slp& slp, SymbolTable& symbols, Letter z, std::uint64_t trail,
                           FixStats& out) {
    std::vector<char> only(symbols.size(), 0);
    only[z] = 1;
    recompress::remove_crossing_blocks(slp, &only);
    MarkerSet marks = assign_marker_weights(symbols, z, trail);
    auto emit = [&](std::uint64_t m, std::vector<Letter>& row) {
        if (m > trail) row.push_back(marks.edge);
        row.push_back(marks.of(m, symbols));
    };
    replace_all_stretches(slp, z, emit);
    strip_front_letter(slp, symbols, marks.edge, out);
}

inline void fix_different(Slp& slp, SymbolTable& symbols, const EndFixPlan& plan,
                          FixStats& out) {
    const Letter pass_start = static_cast<Letter>(symbols.size());
    const Letter a = plan.first;

    if (plan.mode == Mode::different_pair) {
        SlpMeta meta = compute_meta(slp, symbols);
        Letter b = letter_at(slp, meta, slp.pattern_axiom, 2);
        assert(b != a);
        single_pair_round(slp, symbols, a, b);
    } else {
        block_fix_front(slp, symbols, a, plan.lead_len, out);
    }

    // The end, symmetrically, re-measured: fixing the beginning may have
    // compressed the last letter away (then it is fresh and needs nothing)
    // or shrunk the pattern to one letter.
    SlpMeta meta = compute_meta(slp, symbols);
    const SymbolMeta& pm = meta.of(slp.pattern_axiom);
    if (pm.letters < 2) return;
    const Letter z = pm.last;
    if (z >= pass_start) return;

    std::vector<std::optional<EdgeBlock>> memo(slp.rules.size());
    EdgeBlock tail = trail_block(slp, slp.pattern_axiom, z, memo);
    assert(!tail.pure && "first letter is fresh, the pattern cannot be a power of z");
    if (tail.len == 1) {
        Letter x = letter_at_from_end(slp, meta, slp.pattern_axiom, 2);
        assert(x != z);
        single_pair_round(slp, symbols, x, z);
    } else {
        block_fix_back(slp, symbols, z, tail.len, out);
    }
}

inline void fix_same(Slp& slp, SymbolTable& symbols, const EndFixPlan& plan,
                     FixStats& out) {
    const Letter a = plan.first;
    const std::uint64_t lead = plan.lead_len;
    const std::uint64_t trail = plan.trail_len;

    std::vector<char> only(symbols.size(), 0);
    only[a] = 1;
    recompress::remove_crossing_blocks(slp, &only);

    const Letter a_left = symbols.fresh(sat_mul(lead, symbols.weight(a)));
    const Letter a_right = symbols.fresh(0);  // its span is charged to a_m / a_L
    MarkerSet marks = assign_marker_weights(symbols, a, lead);

    // Text blocks a^m: long enough to begin an occurrence they offer a
    // trailing a_L, long enough to end one a leading a_R; the remainder
    // letter a_m keeps prefix weights exact and is skipped exactly when
    // a_L carries the whole block.
    auto emit = [&](std::uint64_t m, std::vector<Letter>& row) {
        if (m >= trail) row.push_back(a_right);
        if (m != lead) row.push_back(marks.of(m, symbols));
        if (m >= lead) row.push_back(a_left);
    };
    replace_all_stretches(slp, a, emit, slp.pattern_axiom);

    // The pattern's own boundary blocks are the markers themselves. Both
    // stretches are explicit in the axiom body after uncrossing, and they
    // are disjoint because the pattern is not a power.
    Body& pat = slp.rules[slp.pattern_axiom].body;
    assert(!pat.front().is_ref() && pat.front().letter == a);
    std::uint64_t got = 0;
    auto it = pat.begin();
    while (it != pat.end() && !it->is_ref() && it->letter == a) {
        got = sat_add(got, it->explicit_len());
        ++it;
    }
    assert(got == lead);
    it = pat.erase(pat.begin(), it);
    pat.insert(it, Item::make_letter(a_left));

    auto tail_begin = pat.end();
    got = 0;
    while (tail_begin != pat.begin()) {
        auto prev = std::prev(tail_begin);
        if (prev->is_ref() || prev->letter != a) break;
        got = sat_add(got, prev->explicit_len());
        tail_begin = prev;
    }
    assert(got == trail);
    pat.erase(tail_begin, pat.end());
    pat.push_back(Item::make_letter(a_right));
    replace_letter_stretches(pat, a, emit);

    strip_front_letter(slp, symbols, a_right, out);
    strip_back_letter(slp, symbols, a_left, out);

    // Three restricted rounds make the new boundary letters fresh: a_L
    // absorbs its successor, a_R its predecessor, and when the trailing
    // block was a single letter the leftover plain `a`s absorb theirs.
    anchored_round(slp, symbols, a_left, Side::left);
    anchored_round(slp, symbols, a_right, Side::right);
    if (trail == 1 && lead > 1) anchored_round(slp, symbols, a, Side::left);
}

}  // namespace detail

/// Fixes both pattern ends per the plan. Occurrences survive in one-to-one
/// correspondence; positions shift forward by the returned stripped prefix
/// weight. Pre: the plan is current, the pattern has at least two letters
/// and is not a power, and it is no longer than the text.
inline FixStats fix_ends_slp(Slp& slp, SymbolTable& symbols, const EndFixPlan& plan) {
    assert(plan.mode != Mode::pattern_is_power);
    FixStats out;
    if (plan.mode == Mode::same_letter)
        detail::fix_same(slp, symbols, plan, out);
    else
        detail::fix_different(slp, symbols, plan, out);
    assert(validate(slp, symbols.size()).ok());
    return out;
}

}  // namespace recomp::endfix
