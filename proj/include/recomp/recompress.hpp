#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "recomp/blocklen.hpp"
#include "recomp/slp.hpp"

namespace recomp::recompress {

using LetterPair = std::pair<Letter, Letter>;

// ---------------------------------------------------------------------------
// Shared plumbing

namespace detail {

struct RefUse {
    RuleId holder;
    BodyIt item;
};

/// Pointers to every reference item, indexed by the referenced rule. The
/// rewriting passes walk rules in ascending order and only touch uses[r] when
/// processing rule r itself; every holder is a higher rule, so its body has
/// not been rewritten yet and the recorded iterators are still live.
inline std::vector<std::vector<RefUse>> ref_uses(Slp& slp) {
    std::vector<std::vector<RefUse>> uses(slp.rules.size());
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        Body& body = slp.rules[r].body;
        for (auto it = body.begin(); it != body.end(); ++it)
            if (it->is_ref()) uses[it->ref].push_back(RefUse{r, it});
    }
    return uses;
}

/// Kills a rule whose value became empty: unlink every reference to it, so
/// no body ever points at an empty rule.
inline void erase_rule(Slp& slp, std::vector<std::vector<RefUse>>& uses, RuleId r) {
    for (const RefUse& use : uses[r]) slp.rules[use.holder].body.erase(use.item);
    uses[r].clear();
    slp.rules[r].body.clear();
    slp.rules[r].alive = false;
}

/// Consumes one letter unit in place without invalidating iterators: plain
/// letters become tombstones, runs lose one repetition.
inline void consume_unit(Item& item) {
    if (item.is_run()) {
        if (--item.exp == 1) item = Item::make_letter(item.letter);
        return;
    }
    assert(item.is_letter());
    item.kind = Item::Kind::dead;
}

inline void sweep_tombstones(Slp& slp) {
    for (Rule& r : slp.rules)
        if (r.alive) r.body.remove_if([](const Item& it) { return it.is_dead(); });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Adjacency scanning

struct PairOcc {
    RuleId holder;
    BodyIt left;  ///< item holding the first letter of the adjacency
};

struct PairGroup {
    Letter a = 0;
    Letter b = 0;
    bool crossing = false;               ///< some occurrence spans a reference
    std::uint64_t rule_appearances = 0;  ///< explicit occurrences + crossing evidence
    std::vector<PairOcc> occs;           ///< explicit occurrences only
};

struct PairScan {
    std::vector<PairGroup> groups;               ///< sorted by (a, b)
    std::vector<Letter> crossing_block_letters;  ///< aa adjacencies spanning a reference

    const PairGroup* find(Letter a, Letter b) const {
        auto it = std::lower_bound(groups.begin(), groups.end(), LetterPair{a, b},
                                   [](const PairGroup& g, const LetterPair& key) {
                                       return LetterPair{g.a, g.b} < key;
                                   });
        if (it == groups.end() || it->a != a || it->b != b) return nullptr;
        return &*it;
    }

    std::set<LetterPair> crossing_pairs() const {
        std::set<LetterPair> out;
        for (const PairGroup& g : groups)
            if (g.crossing) out.insert({g.a, g.b});
        return out;
    }
};

/// Lists every two-letter adjacency of every alive body, radix-grouped by
/// pair. An adjacency next to a reference is read off the referenced value's
/// boundary letters and recorded as crossing evidence; equal-letter
/// adjacencies are block material and only contribute crossing-block flags.
/// With a watermark, only adjacencies whose both letters lie below it (the
/// phase-start alphabet) are listed.
inline PairScan scan_pairs(Slp& slp, const SymbolTable& symbols,
                           std::optional<Letter> watermark = std::nullopt) {
    SlpMeta meta = compute_meta(slp, symbols);
    Letter wm = watermark.value_or(static_cast<Letter>(symbols.size()));

    struct Record {
        Letter a, b;
        bool evidence;
        RuleId holder;
        BodyIt left;
    };
    std::vector<Record> records;
    std::vector<char> block_letter(symbols.size(), 0);

    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        Body& body = slp.rules[r].body;
        for (auto it = body.begin(); it != body.end(); ++it) {
            auto next = std::next(it);
            if (next == body.end()) break;
            assert(!it->is_dead() && !next->is_dead());
            if (it->is_ref()) assert(!meta.of(it->ref).empty);
            if (next->is_ref()) assert(!meta.of(next->ref).empty);
            Letter x = it->is_ref() ? meta.of(it->ref).last : it->letter;
            Letter y = next->is_ref() ? meta.of(next->ref).first : next->letter;
            if (x >= wm || y >= wm) continue;
            bool evidence = it->is_ref() || next->is_ref();
            if (x == y) {
                if (evidence) block_letter[x] = 1;
                continue;
            }
            records.push_back(Record{x, y, evidence, r, it});
        }
    }

    // Radix passes: stable counting sort by second letter, then by first.
    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto counting_pass = [&](auto key) {
        std::vector<std::size_t> count(symbols.size() + 1, 0);
        for (std::size_t i : order) ++count[key(records[i]) + 1];
        for (std::size_t v = 1; v < count.size(); ++v) count[v] += count[v - 1];
        std::vector<std::size_t> next(order.size());
        for (std::size_t i : order) next[count[key(records[i])]++] = i;
        order.swap(next);
    };
    counting_pass([](const Record& rec) { return rec.b; });
    counting_pass([](const Record& rec) { return rec.a; });

    PairScan scan;
    for (std::size_t i = 0; i < order.size();) {
        const Record& head = records[order[i]];
        PairGroup group;
        group.a = head.a;
        group.b = head.b;
        std::size_t j = i;
        for (; j < order.size(); ++j) {
            const Record& rec = records[order[j]];
            if (rec.a != group.a || rec.b != group.b) break;
            ++group.rule_appearances;
            if (rec.evidence)
                group.crossing = true;
            else
                group.occs.push_back(PairOcc{rec.holder, rec.left});
        }
        scan.groups.push_back(std::move(group));
        i = j;
    }
    for (Letter a = 0; a < block_letter.size(); ++a)
        if (block_letter[a]) scan.crossing_block_letters.push_back(a);
    return scan;
}

// ---------------------------------------------------------------------------
// Pair compression

struct CompressStats {
    std::size_t pairs = 0;         ///< distinct pairs that minted a fresh letter
    std::size_t replacements = 0;  ///< adjacencies rewritten
};

/// Replaces the listed occurrences of the pair ab with one fresh letter of
/// weight w(a) + w(b), minted lazily on the first occurrence that is still
/// intact. Occurrences consumed by an earlier pair of the same sweep fail
/// validation and are skipped. Pointers must come from a scan taken after
/// the last structural change; tombstones are left for the caller's sweep.
inline Letter compress_pair_occurrences(Slp& slp, SymbolTable& symbols, Letter a, Letter b,
                                        const std::vector<PairOcc>& occs,
                                        CompressStats* stats = nullptr) {
    assert(a != b);
    Letter fresh = kNoLetter;
    for (const PairOcc& occ : occs) {
        Body& body = slp.rules[occ.holder].body;
        BodyIt left = occ.left;
        if (left->is_dead() || left->is_ref() || left->letter != a) continue;
        BodyIt right = std::next(left);
        while (right != body.end() && right->is_dead()) ++right;
        if (right == body.end() || right->is_ref() || right->letter != b) continue;
        if (fresh == kNoLetter)
            fresh = symbols.fresh(sat_add(symbols.weight(a), symbols.weight(b)));
        detail::consume_unit(*left);
        detail::consume_unit(*right);
        body.insert(right, Item::make_letter(fresh));
        if (stats) ++stats->replacements;
    }
    if (stats && fresh != kNoLetter) ++stats->pairs;
    return fresh;
}

/// Compresses every pair of the scan that has no crossing evidence. Groups
/// are visited in (a, b) order; occurrences of distinct pairs may share a
/// letter position, the stale-skip in the per-pair sweep resolves the race.
inline void compress_noncrossing(Slp& slp, SymbolTable& symbols, const PairScan& scan,
                                 CompressStats* stats = nullptr) {
    for (const PairGroup& g : scan.groups) {
        if (g.crossing || g.occs.empty()) continue;
        compress_pair_occurrences(slp, symbols, g.a, g.b, g.occs, stats);
    }
    detail::sweep_tombstones(slp);
}

// ---------------------------------------------------------------------------
// Uncrossing

struct Partition {
    std::vector<char> left, right;

    Partition() = default;
    explicit Partition(std::size_t letters) : left(letters, 0), right(letters, 0) {}
    bool in_left(Letter a) const { return a < left.size() && left[a]; }
    bool in_right(Letter a) const { return a < right.size() && right[a]; }
};

/// Uncrosses every pair of left x right: ascending over non-axiom rules, a
/// leading right-letter moves in front of every reference to the rule and a
/// trailing left-letter moves behind. A rule whose value becomes empty is
/// unlinked on the spot. Axiom bodies receive insertions but are never
/// popped themselves. Returns the number of letters written into bodies.
inline std::size_t pop(Slp& slp, const Partition& part) {
    auto uses = detail::ref_uses(slp);
    std::size_t inserted = 0;
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive || r == slp.text_axiom || r == slp.pattern_axiom) continue;
        Body& body = slp.rules[r].body;
        if (!body.empty() && !body.front().is_ref() && part.in_right(body.front().letter)) {
            Letter b = body.front().letter;
            if (body.front().is_run()) {
                if (--body.front().exp == 1) body.front() = Item::make_letter(b);
            } else {
                body.pop_front();
            }
            for (const detail::RefUse& use : uses[r]) {
                slp.rules[use.holder].body.insert(use.item, Item::make_letter(b));
                ++inserted;
            }
        }
        if (body.empty()) {
            detail::erase_rule(slp, uses, r);
            continue;
        }
        if (!body.back().is_ref() && part.in_left(body.back().letter)) {
            Letter a = body.back().letter;
            if (body.back().is_run()) {
                if (--body.back().exp == 1) body.back() = Item::make_letter(a);
            } else {
                body.pop_back();
            }
            for (const detail::RefUse& use : uses[r]) {
                slp.rules[use.holder].body.insert(std::next(use.item), Item::make_letter(a));
                ++inserted;
            }
        }
        if (body.empty()) detail::erase_rule(slp, uses, r);
    }
    return inserted;
}

/// Uncrosses blocks: ascending over non-axiom rules, the maximal same-letter
/// prefix and suffix move as single runs around every reference to the rule.
/// By induction the pushed-down runs are already in place when a rule is
/// processed, so the popped prefix is maximal for the whole value. With a
/// filter only the flagged letters are popped (the end-fixing variant).
/// Adjacent runs are merged before returning, so every eval-maximal block of
/// a popped letter lies inside one body afterwards.
inline void remove_crossing_blocks(Slp& slp, const std::vector<char>* only = nullptr) {
    auto pops = [only](Letter a) {
        return only == nullptr || (a < only->size() && (*only)[a]);
    };
    auto uses = detail::ref_uses(slp);
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive || r == slp.text_axiom || r == slp.pattern_axiom) continue;
        Body& body = slp.rules[r].body;
        Letter a = kNoLetter;
        std::uint64_t lead = 0;
        if (!body.empty() && !body.front().is_ref() && pops(body.front().letter)) {
            a = body.front().letter;
            while (!body.empty() && !body.front().is_ref() && body.front().letter == a) {
                lead = sat_add(lead, body.front().explicit_len());
                body.pop_front();
            }
        }
        Letter b = kNoLetter;
        std::uint64_t trail = 0;
        if (!body.empty() && !body.back().is_ref() && pops(body.back().letter)) {
            b = body.back().letter;
            while (!body.empty() && !body.back().is_ref() && body.back().letter == b) {
                trail = sat_add(trail, body.back().explicit_len());
                body.pop_back();
            }
        }
        for (const detail::RefUse& use : uses[r]) {
            if (lead > 0) slp.rules[use.holder].body.insert(use.item, Item::make_run(a, lead));
            if (trail > 0)
                slp.rules[use.holder].body.insert(std::next(use.item), Item::make_run(b, trail));
        }
        if (body.empty()) detail::erase_rule(slp, uses, r);
    }
    merge_adjacent_runs(slp);
}

// ---------------------------------------------------------------------------
// Block compression

struct BlockRecord {
    RuleId holder;
    BodyIt first;  ///< first item of the maximal block
    BodyIt last;   ///< last item, inclusive
    Letter letter = 0;
    blocklen::BlockLen len;
    bool in_pattern = false;  ///< holder reachable from the pattern axiom
    bool sloppy = false;
};

/// Lists every maximal block of length >= 2 across all alive bodies, with
/// the length assembled symbolically: explicit letters feed the offset, run
/// exponents the common part. Requires crossing blocks of the eligible
/// letters to be gone, so body-maximal equals value-maximal.
inline std::vector<BlockRecord> build_block_lengths(Slp& slp, blocklen::CommonTable& table,
                                                    std::optional<Letter> watermark = std::nullopt) {
    std::vector<char> pat = reachable_from(slp, slp.pattern_axiom);
    Letter wm = watermark.value_or(kNoLetter);
    std::vector<BlockRecord> out;
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        Body& body = slp.rules[r].body;
        for (auto it = body.begin(); it != body.end();) {
            if (it->is_ref()) {
                ++it;
                continue;
            }
            Letter a = it->letter;
            auto cur = it;
            if (a >= wm) {
                while (cur != body.end() && !cur->is_ref() && cur->letter == a) ++cur;
                it = cur;
                continue;
            }
            BlockRecord rec;
            rec.holder = r;
            rec.first = it;
            rec.letter = a;
            rec.in_pattern = pat[r] != 0;
            while (cur != body.end() && !cur->is_ref() && cur->letter == a) {
                if (cur->is_run())
                    blocklen::add_power(rec.len, cur->exp, table);
                else
                    blocklen::add_letters(rec.len, 1);
                rec.last = cur;
                ++cur;
            }
            if (rec.len.value(table) >= 2) out.push_back(rec);
            it = cur;
        }
    }
    return out;
}

struct BlockCompressStats {
    std::size_t blocks = 0;         ///< block occurrences rewritten
    std::size_t honest_groups = 0;  ///< distinct (letter, length) classes
    std::size_t sloppy_blocks = 0;  ///< blocks given a unique letter unsorted
};

/// Replaces every maximal eligible block a^l by a fresh letter of weight
/// l * w(a). With pattern caps on, blocks of letters present in the pattern
/// and no longer than that letter's largest pattern block share one letter
/// per (letter, l) class, found by the grouped symbolic sort; every other
/// block is longer than anything it could align with inside an occurrence,
/// so it gets a unique letter with no length comparison at all. With caps
/// off (equality testing) every block is classed honestly.
inline void compress_blocks(Slp& slp, SymbolTable& symbols, bool use_pattern_caps,
                            std::optional<Letter> watermark = std::nullopt,
                            BlockCompressStats* stats = nullptr,
                            blocklen::SortCounters* counters = nullptr) {
    blocklen::CommonTable table;
    std::vector<BlockRecord> recs = build_block_lengths(slp, table, watermark);
    if (recs.empty()) return;

    if (use_pattern_caps) {
        std::map<Letter, std::uint64_t> cap;
        for (const BlockRecord& rec : recs)
            if (rec.in_pattern) {
                std::uint64_t& c = cap[rec.letter];
                c = std::max(c, rec.len.value(table));
            }
        for (BlockRecord& rec : recs) {
            auto it = cap.find(rec.letter);
            rec.sloppy = it == cap.end() || blocklen::mark_too_long(rec.len, table, it->second);
        }
    }

    auto thin = blocklen::thin_commons(table, grammar_size(slp), counters);
    std::vector<blocklen::BlockLen> honest;
    std::vector<std::size_t> honest_idx;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].sloppy) continue;
        thin.redirect(recs[i].len, table);
        honest.push_back(recs[i].len);
        honest_idx.push_back(i);
    }
    auto groups = blocklen::sort_block_lengths(
        honest, [&](std::size_t k) { return recs[honest_idx[k]].letter; }, table, thin, counters);

    auto rewrite = [&](const BlockRecord& rec, Letter fresh) {
        Body& body = slp.rules[rec.holder].body;
        *rec.first = Item::make_letter(fresh);
        body.erase(std::next(rec.first), std::next(rec.last));
        if (stats) ++stats->blocks;
    };
    for (const std::vector<std::size_t>& group : groups) {
        const BlockRecord& head = recs[honest_idx[group.front()]];
        Letter fresh =
            symbols.fresh(sat_mul(head.len.value(table), symbols.weight(head.letter)));
        for (std::size_t k : group) rewrite(recs[honest_idx[k]], fresh);
        if (stats) ++stats->honest_groups;
    }
    for (const BlockRecord& rec : recs) {
        if (!rec.sloppy) continue;
        rewrite(rec, symbols.fresh(sat_mul(rec.len.value(table), symbols.weight(rec.letter))));
        if (stats) ++stats->sloppy_blocks;
    }
}

// ---------------------------------------------------------------------------
// Crossing-pair schedules

using PairCounts = std::map<LetterPair, std::uint64_t>;

/// Occurrence count of every two-letter adjacency in the pattern value: each
/// rule's explicit adjacencies and boundary adjacencies contribute once per
/// occurrence of the rule in the pattern derivation, computed top-down from
/// one use of the axiom. Counts saturate.
inline PairCounts count_pattern_pair_occurrences(const Slp& slp, const SymbolTable& symbols,
                                                 std::optional<Letter> watermark = std::nullopt) {
    SlpMeta meta = compute_meta(slp, symbols);
    Letter wm = watermark.value_or(static_cast<Letter>(symbols.size()));
    std::vector<std::uint64_t> k(slp.rules.size(), 0);
    k[slp.pattern_axiom] = 1;
    for (RuleId r = static_cast<RuleId>(slp.rules.size()); r-- > 0;) {
        if (!slp.rules[r].alive || k[r] == 0) continue;
        for (const Item& it : slp.rules[r].body)
            if (it.is_ref()) k[it.ref] = sat_add(k[it.ref], k[r]);
    }
    PairCounts counts;
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive || k[r] == 0) continue;
        const Body& body = slp.rules[r].body;
        for (auto it = body.begin(); it != body.end(); ++it) {
            auto next = std::next(it);
            if (next == body.end()) break;
            Letter x = it->is_ref() ? meta.of(it->ref).last : it->letter;
            Letter y = next->is_ref() ? meta.of(next->ref).first : next->letter;
            if (x == y || x >= wm || y >= wm) continue;
            std::uint64_t& c = counts[{x, y}];
            c = sat_add(c, k[r]);
        }
    }
    return counts;
}

/// Derandomised partition: letters join the side whose opposite already
/// carries more of their adjacent mass, then the orientation covering the
/// larger total wins. Covers at least a quarter of the counted mass.
/// Letters outside the counts all land on the left; popping them is value
/// preserving either way.
inline Partition greedy_partition(const PairCounts& counts, std::size_t letters) {
    Partition part(letters);
    std::vector<Letter> used;
    std::map<Letter, std::vector<std::pair<Letter, std::uint64_t>>> right_of, left_of;
    for (const auto& [pr, kk] : counts) {
        used.push_back(pr.first);
        used.push_back(pr.second);
        right_of[pr.first].push_back({pr.second, kk});
        left_of[pr.second].push_back({pr.first, kk});
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    std::vector<std::uint64_t> count_l(letters, 0), count_r(letters, 0);
    for (Letter a : used) {
        bool to_left = count_r[a] >= count_l[a];
        (to_left ? part.left : part.right)[a] = 1;
        auto& bucket = to_left ? count_l : count_r;
        for (const auto& [b, kk] : right_of[a]) bucket[b] = sat_add(bucket[b], kk);
        for (const auto& [b, kk] : left_of[a]) bucket[b] = sat_add(bucket[b], kk);
    }

    std::uint64_t cover_lr = 0, cover_rl = 0;
    for (const auto& [pr, kk] : counts) {
        if (part.in_left(pr.first) && part.in_right(pr.second)) cover_lr = sat_add(cover_lr, kk);
        if (part.in_right(pr.first) && part.in_left(pr.second)) cover_rl = sat_add(cover_rl, kk);
    }
    if (cover_rl > cover_lr) std::swap(part.left, part.right);

    for (Letter a = 0; a < letters; ++a)
        if (!part.left[a] && !part.right[a]) part.left[a] = 1;
    return part;
}

/// The same greedy choice over per-rule adjacency counts, each appearance in
/// a body weighing one, restricted to the given pairs.
inline Partition greedy_partition_grammar(Slp& slp, const SymbolTable& symbols,
                                          const std::set<LetterPair>& pairs,
                                          std::optional<Letter> watermark = std::nullopt) {
    PairScan scan = scan_pairs(slp, symbols, watermark);
    PairCounts counts;
    for (const PairGroup& g : scan.groups)
        if (pairs.count({g.a, g.b})) counts[{g.a, g.b}] = g.rule_appearances;
    return greedy_partition(counts, symbols.size());
}

/// Pops for the partition, then compresses those of the listed pairs the
/// partition covers, working from a fresh post-pop scan. Returns the covered
/// subset. No-op when nothing is covered.
inline std::set<LetterPair> compress_covered(Slp& slp, SymbolTable& symbols,
                                             const std::set<LetterPair>& pairs,
                                             const Partition& part,
                                             CompressStats* stats = nullptr) {
    std::set<LetterPair> covered;
    for (const LetterPair& pr : pairs)
        if (part.in_left(pr.first) && part.in_right(pr.second)) covered.insert(pr);
    if (covered.empty()) return covered;
    pop(slp, part);
    PairScan scan = scan_pairs(slp, symbols);
    for (const LetterPair& pr : covered) {
        const PairGroup* g = scan.find(pr.first, pr.second);
        if (g == nullptr) continue;
        assert(!g->crossing);
        compress_pair_occurrences(slp, symbols, pr.first, pr.second, g->occs, stats);
    }
    detail::sweep_tombstones(slp);
    return covered;
}

/// Greedy schedule: one partition aimed at the pattern's crossing-pair mass,
/// a second at the grammar's, each covering at least a quarter of its
/// measure. Pairs covered by neither wait for a later phase; the pattern
/// still shrinks every phase through ends, blocks and covered pairs.
inline void compress_crossing_greedy(Slp& slp, SymbolTable& symbols,
                                     const std::set<LetterPair>& crossing,
                                     std::optional<Letter> watermark = std::nullopt,
                                     CompressStats* stats = nullptr) {
    if (crossing.empty()) return;
    PairCounts pattern_mass = count_pattern_pair_occurrences(slp, symbols, watermark);
    for (auto it = pattern_mass.begin(); it != pattern_mass.end();)
        it = crossing.count(it->first) ? std::next(it) : pattern_mass.erase(it);

    std::set<LetterPair> remaining = crossing;
    if (!pattern_mass.empty()) {
        Partition part = greedy_partition(pattern_mass, symbols.size());
        for (const LetterPair& pr : compress_covered(slp, symbols, remaining, part, stats))
            remaining.erase(pr);
    }
    if (remaining.empty()) return;
    Partition part = greedy_partition_grammar(slp, symbols, remaining, watermark);
    compress_covered(slp, symbols, remaining, part, stats);
}

/// Binary-expansion schedule: group 2i-1 splits letters by bit i of their
/// phase-start ids with the zero side on the left, group 2i the same with
/// sides swapped. Every crossing pair lands in the first group that splits
/// it, groups without pairs are skipped, and each group is popped and then
/// compressed from a fresh scan. Compresses every listed pair.
inline void compress_crossing_binary(Slp& slp, SymbolTable& symbols,
                                     const std::set<LetterPair>& crossing, Letter phase_alphabet,
                                     CompressStats* stats = nullptr) {
    if (crossing.empty()) return;
    std::map<unsigned, std::set<LetterPair>> groups;
    for (const LetterPair& pr : crossing) {
        assert(pr.first < phase_alphabet && pr.second < phase_alphabet);
        unsigned bit = static_cast<unsigned>(std::countr_zero(pr.first ^ pr.second));
        bool a_zero = ((pr.first >> bit) & 1u) == 0;
        groups[2 * bit + (a_zero ? 1 : 2)].insert(pr);
    }
    for (const auto& [j, pending] : groups) {
        unsigned bit = (j - 1) / 2;
        bool zero_left = (j % 2) == 1;
        Partition part(symbols.size());
        for (Letter a = 0; a < phase_alphabet; ++a) {
            bool zero = ((a >> bit) & 1u) == 0;
            (zero == zero_left ? part.left : part.right)[a] = 1;
        }
        pop(slp, part);
        PairScan scan = scan_pairs(slp, symbols);
        for (const LetterPair& pr : pending) {
            const PairGroup* g = scan.find(pr.first, pr.second);
            if (g == nullptr) continue;
            assert(!g->crossing);
            compress_pair_occurrences(slp, symbols, pr.first, pr.second, g->occs, stats);
        }
        detail::sweep_tombstones(slp);
    }
}

}  // namespace recomp::recompress
