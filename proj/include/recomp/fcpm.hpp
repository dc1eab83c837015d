#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "recomp/endfix.hpp"
#include "recomp/recompress.hpp"
#include "recomp/saturating.hpp"
#include "recomp/slp.hpp"

namespace recomp::fcpm {

/// Crossing-pair schedule. Greedy compresses the covered quarter of the
/// crossing mass per phase and leaves the rest for later; binary clears every
/// crossing pair at an extra log factor of fresh letters.
enum class Strategy { greedy, binary };

/// One row per completed phase; counters are measured after phase-boundary
/// hygiene, so `alphabet` counts the letters actually present in bodies.
struct PhaseStats {
    std::size_t phase = 0;              ///< 1-based
    std::uint64_t pattern_letters = 0;  ///< saturating
    std::uint64_t text_letters = 0;     ///< saturating
    std::size_t grammar = 0;            ///< alive body items
    std::size_t alphabet = 0;
    std::size_t fresh_letters = 0;  ///< minted this phase, hygiene discards included
    std::size_t pairs = 0;          ///< distinct pairs that minted a letter
    std::size_t pair_replacements = 0;
    std::size_t blocks = 0;  ///< block occurrences rewritten
};

struct Options {
    Strategy strategy = Strategy::greedy;
    std::vector<PhaseStats>* trace = nullptr;
    blocklen::SortCounters* sort_counters = nullptr;  ///< accumulated across phases
};

/// All pattern occurrences, folded into the final grammar. When `possible`,
/// each occurrence start corresponds to one position inside a maximal stretch
/// hit^m of the final text value with m >= need: a stretch holds m - need + 1
/// starts, one per step of weight(hit). Stretches lie inside single bodies
/// (crossing hit-blocks were removed), so queries walk bodies directly.
/// Positions are 1-based in input units; stripped weights restore what end
/// fixing cut off the text. A position equal to the saturation cap means the
/// true value overflowed 2^63 - 1.
struct OccurrenceSet {
    bool possible = false;  ///< false: ruled out before marking, count is 0
    Slp slp;
    SymbolTable symbols;
    Letter hit = kNoLetter;
    std::uint64_t need = 1;
    std::uint64_t stripped_prefix = 0;
    std::uint64_t stripped_suffix = 0;
};

/// Phase cap, checked in every build: 64 * log2(pattern weight) + 16. A run
/// past it means a phase stopped shrinking the pattern, which breaks the
/// whole scheme, so it fails loudly rather than looping.
inline std::size_t phase_budget(std::uint64_t weight) {
    return 64u * static_cast<std::size_t>(std::bit_width(weight | 1)) + 16u;
}

struct PhaseOutcome {
    std::size_t pairs = 0;
    std::size_t pair_replacements = 0;
    std::size_t blocks = 0;
};

/// One phase of the shared engine: block stage then pair stage over the
/// letters below wm. One scan feeds both pair steps: the noncrossing sweep
/// and the crossing schedule must agree on which pairs crossed at scan time,
/// or a pair whose crossing evidence dies mid-sweep would be skipped by both.
/// End fixing and phase-boundary hygiene are the caller's.
inline PhaseOutcome run_phase(Slp& slp, SymbolTable& symbols, Letter wm, bool pattern_caps,
                              Strategy strategy, blocklen::SortCounters* counters = nullptr) {
    recompress::remove_crossing_blocks(slp);
    recompress::BlockCompressStats bstats;
    recompress::compress_blocks(slp, symbols, pattern_caps, wm, &bstats, counters);

    recompress::PairScan scan = recompress::scan_pairs(slp, symbols, wm);
    recompress::CompressStats pstats;
    recompress::compress_noncrossing(slp, symbols, scan, &pstats);
    std::set<recompress::LetterPair> crossing = scan.crossing_pairs();
    if (strategy == Strategy::binary)
        recompress::compress_crossing_binary(slp, symbols, crossing, wm, &pstats);
    else
        recompress::compress_crossing_greedy(slp, symbols, crossing, wm, &pstats);

    PhaseOutcome out;
    out.pairs = pstats.pairs;
    out.pair_replacements = pstats.replacements;
    out.blocks = bstats.blocks;
    return out;
}

/// Cleanup then a dense alphabet; renumbering last keeps dropped letters out.
/// Returns old-id -> new-id for letters a caller carries across the boundary.
inline std::vector<Letter> phase_hygiene(Slp& slp, SymbolTable& symbols) {
    drop_empty_rules(slp);
    gc_unreachable(slp);
    merge_adjacent_runs(slp);
    return renumber_alphabet(slp, symbols);
}

namespace detail {

inline void record_phase(const Options& opt, std::size_t phase, const Slp& slp,
                         const SymbolTable& symbols, std::size_t phase_start_symbols,
                         std::size_t minted_total, const PhaseOutcome& po) {
    if (opt.trace == nullptr) return;
    SlpMeta meta = compute_meta(slp, symbols);
    PhaseStats row;
    row.phase = phase;
    row.pattern_letters = meta.of(slp.pattern_axiom).letters;
    row.text_letters = meta.of(slp.text_axiom).letters;
    row.grammar = grammar_size(slp);
    row.alphabet = symbols.size();
    row.fresh_letters = minted_total - phase_start_symbols;
    row.pairs = po.pairs;
    row.pair_replacements = po.pair_replacements;
    row.blocks = po.blocks;
    opt.trace->push_back(row);
}

/// Make every maximal hit-stretch body-local, tidy up, and move the instance
/// into the result. The hit letter is renumbered with the alphabet.
inline OccurrenceSet finalize(Slp&& slp, SymbolTable&& symbols, OccurrenceSet&& out) {
    std::vector<char> only(symbols.size(), 0);
    only[out.hit] = 1;
    recompress::remove_crossing_blocks(slp, &only);
    std::vector<Letter> map = phase_hygiene(slp, symbols);
    out.hit = map[out.hit];
    assert(out.hit != kNoLetter);
    assert(validate(slp, static_cast<Letter>(symbols.size())).ok());
    out.possible = true;
    out.slp = std::move(slp);
    out.symbols = std::move(symbols);
    return std::move(out);
}

inline OccurrenceSet no_match(Slp&& slp, SymbolTable&& symbols, OccurrenceSet&& out) {
    out.possible = false;
    out.hit = kNoLetter;
    out.slp = std::move(slp);
    out.symbols = std::move(symbols);
    return std::move(out);
}

}  // namespace detail

/// Fully compressed pattern matching: phases of end fixing, block compression
/// and pair compression shrink the pattern to one letter while the text is
/// rewritten in lockstep, so the surviving letter marks exactly the
/// occurrence starts. Runs in time polynomial in the grammar size however
/// long the decompressed strings are. The input pattern must be nonempty;
/// shared or referenced axioms are normalized away first.
inline OccurrenceSet fcpm(Slp slp, const Options& opt = {}) {
    normalize_axioms(slp);
    SymbolTable symbols(slp.alphabet);
    assert(validate(slp, static_cast<Letter>(symbols.size())).ok());

    OccurrenceSet out;
    SlpMeta meta = compute_meta(slp, symbols);
    assert(!meta.of(slp.pattern_axiom).empty);
    if (meta.of(slp.pattern_axiom).weight > meta.of(slp.text_axiom).weight)
        return detail::no_match(std::move(slp), std::move(symbols), std::move(out));
    const std::size_t budget = phase_budget(meta.of(slp.pattern_axiom).weight);

    for (std::size_t phase = 1;; ++phase) {
        meta = compute_meta(slp, symbols);
        const std::uint64_t pat_letters = meta.of(slp.pattern_axiom).letters;
        if (pat_letters > meta.of(slp.text_axiom).letters)
            return detail::no_match(std::move(slp), std::move(symbols), std::move(out));
        if (pat_letters == 1) {
            out.hit = meta.of(slp.pattern_axiom).first;
            out.need = 1;
            return detail::finalize(std::move(slp), std::move(symbols), std::move(out));
        }
        endfix::EndFixPlan plan = endfix::plan_endfix(slp, symbols);
        if (plan.mode == endfix::Mode::pattern_is_power) {
            out.hit = plan.first;
            out.need = plan.lead_len;
            return detail::finalize(std::move(slp), std::move(symbols), std::move(out));
        }
        if (phase > budget) throw std::runtime_error("fcpm: phase budget exceeded");

        const std::size_t phase_start_symbols = symbols.size();
        const Letter wm = static_cast<Letter>(phase_start_symbols);
        endfix::FixStats fs = endfix::fix_ends_slp(slp, symbols, plan);
        out.stripped_prefix = sat_add(out.stripped_prefix, fs.stripped_prefix);
        out.stripped_suffix = sat_add(out.stripped_suffix, fs.stripped_suffix);

        // End fixing alone can reach one letter; blocks and pairs would only
        // recompress the text then.
        SlpMeta mid = compute_meta(slp, symbols);
        if (mid.of(slp.pattern_axiom).letters == 1) {
            out.hit = mid.of(slp.pattern_axiom).first;
            out.need = 1;
            return detail::finalize(std::move(slp), std::move(symbols), std::move(out));
        }

        PhaseOutcome po = run_phase(slp, symbols, wm, true, opt.strategy, opt.sort_counters);
        const std::size_t minted_total = symbols.size();
        phase_hygiene(slp, symbols);

        detail::record_phase(opt, phase, slp, symbols, phase_start_symbols, minted_total, po);
#ifndef NDEBUG
        SlpMeta after = compute_meta(slp, symbols);
        assert(is_saturated(pat_letters) ||
               after.of(slp.pattern_axiom).letters < pat_letters);
        assert(validate(slp, static_cast<Letter>(symbols.size())).ok());
#endif
    }
}

/// Equality of the two axioms' values. Lengths settle most cases; otherwise
/// phases of block and pair compression (binary schedule, so every pair of a
/// phase is cleared and both sides shrink geometrically) run until one side
/// is a single letter. Values are equal iff the substituted strings stay
/// equal, so the final letter comparison decides.
inline bool equal_slp(Slp slp, const Options& opt = {}) {
    normalize_axioms(slp);
    SymbolTable symbols(slp.alphabet);
    assert(validate(slp, static_cast<Letter>(symbols.size())).ok());

    SlpMeta meta = compute_meta(slp, symbols);
    if (meta.of(slp.text_axiom).weight != meta.of(slp.pattern_axiom).weight) return false;
    if (meta.of(slp.text_axiom).empty) return meta.of(slp.pattern_axiom).empty;
    const std::size_t budget = phase_budget(meta.of(slp.text_axiom).weight);

    for (std::size_t phase = 1;; ++phase) {
        meta = compute_meta(slp, symbols);
        const std::uint64_t lt = meta.of(slp.text_axiom).letters;
        const std::uint64_t lp = meta.of(slp.pattern_axiom).letters;
        if (lt == 1 || lp == 1) {
            if (lt != lp) return false;
            return meta.of(slp.text_axiom).first == meta.of(slp.pattern_axiom).first;
        }
        if (phase > budget) throw std::runtime_error("equal_slp: phase budget exceeded");

        const std::size_t phase_start_symbols = symbols.size();
        const Letter wm = static_cast<Letter>(phase_start_symbols);
        PhaseOutcome po = run_phase(slp, symbols, wm, false, Strategy::binary, opt.sort_counters);
        const std::size_t minted_total = symbols.size();
        phase_hygiene(slp, symbols);

        detail::record_phase(opt, phase, slp, symbols, phase_start_symbols, minted_total, po);
#ifndef NDEBUG
        SlpMeta after = compute_meta(slp, symbols);
        assert(is_saturated(lt) || after.of(slp.text_axiom).letters < lt);
        assert(is_saturated(lp) || after.of(slp.pattern_axiom).letters < lp);
        assert(validate(slp, static_cast<Letter>(symbols.size())).ok());
#endif
    }
}

// ---------------------------------------------------------------------------
// Occurrence queries

namespace detail {

/// Starts inside one stretch hit^len.
inline std::uint64_t stretch_hits(std::uint64_t len, std::uint64_t need) {
    return len >= need ? sat_add(sat_sub(len, need), 1) : 0;
}

/// How many times each rule's value occurs in the text derivation.
inline std::vector<std::uint64_t> text_multiplicity(const Slp& slp) {
    std::vector<std::uint64_t> k(slp.rules.size(), 0);
    k[slp.text_axiom] = 1;
    for (RuleId r = static_cast<RuleId>(slp.rules.size()); r-- > 0;) {
        if (!slp.rules[r].alive || k[r] == 0) continue;
        for (const Item& it : slp.rules[r].body)
            if (it.is_ref()) k[it.ref] = sat_add(k[it.ref], k[r]);
    }
    return k;
}

/// Occurrence starts inside one copy of each rule's value. Stretches never
/// span a reference boundary, so a per-body walk sees every one whole.
inline std::vector<std::uint64_t> local_hits(const Slp& slp, Letter hit, std::uint64_t need) {
    std::vector<std::uint64_t> c(slp.rules.size(), 0);
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        std::uint64_t total = 0;
        std::uint64_t run = 0;
        auto flush = [&] {
            total = sat_add(total, stretch_hits(run, need));
            run = 0;
        };
        for (const Item& it : slp.rules[r].body) {
            if (!it.is_ref() && it.letter == hit) {
                run = sat_add(run, it.explicit_len());
            } else {
                flush();
                if (it.is_ref()) total = sat_add(total, c[it.ref]);
            }
        }
        flush();
        c[r] = total;
    }
    return c;
}

struct Walk {
    const Slp& slp;
    const SymbolTable& symbols;
    const SlpMeta& meta;
    const std::vector<std::uint64_t>& local;
    Letter hit;
    std::uint64_t need;
    std::uint64_t hit_w;
    std::uint64_t limit;
    std::vector<std::uint64_t>& out;
    std::uint64_t prefix;  ///< weight left of the cursor, strip included

    /// Left-to-right, emitting starts until the limit; false aborts the walk.
    bool leftmost(RuleId r) {
        std::uint64_t run = 0;
        auto flush = [&]() -> bool {
            for (std::uint64_t j = 0, n = stretch_hits(run, need); j < n; ++j) {
                if (out.size() == limit) return false;
                out.push_back(sat_add(prefix, sat_add(sat_mul(j, hit_w), 1)));
            }
            prefix = sat_add(prefix, sat_mul(run, hit_w));
            run = 0;
            return true;
        };
        for (const Item& it : slp.rules[r].body) {
            if (!it.is_ref() && it.letter == hit) {
                run = sat_add(run, it.explicit_len());
                continue;
            }
            if (!flush()) return false;
            if (it.is_ref()) {
                if (local[it.ref] == 0) {
                    prefix = sat_add(prefix, meta.of(it.ref).weight);
                } else if (!leftmost(it.ref)) {
                    return false;
                }
            } else {
                prefix = sat_add(prefix, sat_mul(it.explicit_len(), symbols.weight(it.letter)));
            }
        }
        return flush();
    }

    /// Right-to-left; `suffix` is the weight right of the cursor. Returns the
    /// start offset of the last occurrence within the walked value.
    std::optional<std::uint64_t> rightmost(RuleId r, std::uint64_t& suffix,
                                           std::uint64_t total_weight) {
        std::uint64_t run = 0;
        auto settle = [&]() -> std::optional<std::uint64_t> {
            if (run >= need)
                return sat_sub(sat_sub(total_weight, suffix), sat_mul(need, hit_w));
            suffix = sat_add(suffix, sat_mul(run, hit_w));
            run = 0;
            return std::nullopt;
        };
        const Body& body = slp.rules[r].body;
        for (auto it = body.rbegin(); it != body.rend(); ++it) {
            if (!it->is_ref() && it->letter == hit) {
                run = sat_add(run, it->explicit_len());
                continue;
            }
            if (auto p = settle()) return p;
            if (it->is_ref()) {
                if (local[it->ref] > 0) {
                    auto p = rightmost(it->ref, suffix, total_weight);
                    assert(p.has_value());
                    return p;
                }
                suffix = sat_add(suffix, meta.of(it->ref).weight);
            } else {
                suffix = sat_add(suffix, sat_mul(it->explicit_len(), symbols.weight(it->letter)));
            }
        }
        return settle();
    }
};

}  // namespace detail

/// Number of occurrences, saturating.
inline std::uint64_t count(const OccurrenceSet& occ) {
    if (!occ.possible) return 0;
    const Slp& slp = occ.slp;
    std::vector<std::uint64_t> k = detail::text_multiplicity(slp);
    std::uint64_t total = 0;
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive || k[r] == 0) continue;
        std::uint64_t run = 0;
        auto flush = [&] {
            total = sat_add(total, sat_mul(detail::stretch_hits(run, occ.need), k[r]));
            run = 0;
        };
        for (const Item& it : slp.rules[r].body) {
            if (!it.is_ref() && it.letter == occ.hit)
                run = sat_add(run, it.explicit_len());
            else
                flush();
        }
        flush();
    }
    return total;
}

/// The first `limit` occurrence starts, ascending, 1-based in input units.
inline std::vector<std::uint64_t> enumerate(const OccurrenceSet& occ, std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (!occ.possible || limit == 0) return out;
    SlpMeta meta = compute_meta(occ.slp, occ.symbols);
    std::vector<std::uint64_t> local = detail::local_hits(occ.slp, occ.hit, occ.need);
    detail::Walk walk{occ.slp,  occ.symbols,
                      meta,     local,
                      occ.hit,  occ.need,
                      occ.symbols.weight(occ.hit), limit,
                      out,      occ.stripped_prefix};
    walk.leftmost(occ.slp.text_axiom);
    return out;
}

enum class Which { first, last };

/// Start of the first or last occurrence, none when there is no occurrence.
inline std::optional<std::uint64_t> position(const OccurrenceSet& occ, Which which) {
    if (!occ.possible) return std::nullopt;
    if (which == Which::first) {
        std::vector<std::uint64_t> one = enumerate(occ, 1);
        if (one.empty()) return std::nullopt;
        return one.front();
    }
    SlpMeta meta = compute_meta(occ.slp, occ.symbols);
    std::vector<std::uint64_t> local = detail::local_hits(occ.slp, occ.hit, occ.need);
    if (local[occ.slp.text_axiom] == 0) return std::nullopt;
    std::vector<std::uint64_t> sink;
    detail::Walk walk{occ.slp,  occ.symbols,
                      meta,     local,
                      occ.hit,  occ.need,
                      occ.symbols.weight(occ.hit), 0,
                      sink,     0};
    std::uint64_t suffix = 0;
    std::optional<std::uint64_t> offset =
        walk.rightmost(occ.slp.text_axiom, suffix, meta.of(occ.slp.text_axiom).weight);
    assert(offset.has_value());
    if (!offset.has_value()) return std::nullopt;
    return sat_add(sat_add(occ.stripped_prefix, *offset), 1);
}

}  // namespace recomp::fcpm
