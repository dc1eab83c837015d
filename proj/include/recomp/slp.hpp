#pragma once

#include <cassert>
#include <cstdint>
#include <list>
#include <optional>
#include <string>
#include <vector>

#include "recomp/saturating.hpp"
#include "recomp/symbols.hpp"

namespace recomp {

/// One entry of a rule body: an explicit letter, a reference to a lower rule,
/// or a run a^e (e >= 2 between operations). Dead entries are tombstones left
/// by a compression sweep; they are erased before the sweep returns, so no
/// public operation ever sees one.
struct Item {
    enum class Kind : std::uint8_t { letter, ref, run, dead };

    Kind kind = Kind::dead;
    Letter letter = 0;
    RuleId ref = 0;
    std::uint64_t exp = 0;

    static Item make_letter(Letter a) {
        Item it;
        it.kind = Kind::letter;
        it.letter = a;
        return it;
    }
    static Item make_ref(RuleId r) {
        Item it;
        it.kind = Kind::ref;
        it.ref = r;
        return it;
    }
    static Item make_run(Letter a, std::uint64_t e) {
        assert(e >= 1);
        if (e == 1) return make_letter(a);
        Item it;
        it.kind = Kind::run;
        it.letter = a;
        it.exp = e;
        return it;
    }

    bool is_letter() const { return kind == Kind::letter; }
    bool is_ref() const { return kind == Kind::ref; }
    bool is_run() const { return kind == Kind::run; }
    bool is_dead() const { return kind == Kind::dead; }
    /// Letter count this item contributes directly (refs contribute via meta).
    std::uint64_t explicit_len() const { return is_letter() ? 1 : is_run() ? exp : 0; }
};

using Body = std::list<Item>;
using BodyIt = Body::iterator;

struct Rule {
    Body body;
    bool alive = true;
};

/// A straight-line program over a dense letter alphabet, holding both the
/// text and the pattern as designated axiom rules of one shared rule table.
/// Rule bodies only reference lower-numbered rules; a rule whose value is
/// empty never appears in any body.
struct Slp {
    std::vector<Rule> rules;
    RuleId text_axiom = 0;
    RuleId pattern_axiom = 0;
    Letter alphabet = 0;

    Rule& rule(RuleId r) { return rules[r]; }
    const Rule& rule(RuleId r) const { return rules[r]; }
    RuleId add_rule(Body body) {
        rules.push_back(Rule{std::move(body), true});
        return static_cast<RuleId>(rules.size() - 1);
    }
};

inline std::size_t grammar_size(const Slp& slp) {
    std::size_t n = 0;
    for (const Rule& r : slp.rules)
        if (r.alive) n += r.body.size();
    return n;
}

inline std::size_t rule_count(const Slp& slp) {
    std::size_t n = 0;
    for (const Rule& r : slp.rules)
        if (r.alive) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Metadata

struct SymbolMeta {
    std::uint64_t letters = 0;  ///< value length in current letters, saturating
    std::uint64_t weight = 0;   ///< value length in input letters, saturating
    Letter first = kNoLetter;
    Letter last = kNoLetter;
    bool empty = true;
};

struct SlpMeta {
    std::vector<SymbolMeta> rule;

    const SymbolMeta& of(RuleId r) const { return rule[r]; }
};

/// Bottom-up value statistics per rule. Runs in one pass; all counters
/// saturate at kMaxLen.
inline SlpMeta compute_meta(const Slp& slp, const SymbolTable& symbols) {
    SlpMeta meta;
    meta.rule.resize(slp.rules.size());
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        SymbolMeta m;
        for (const Item& it : slp.rules[r].body) {
            if (it.is_dead()) continue;
            Letter first = kNoLetter;
            Letter last = kNoLetter;
            std::uint64_t letters = 0;
            std::uint64_t weight = 0;
            if (it.is_letter()) {
                first = last = it.letter;
                letters = 1;
                weight = symbols.weight(it.letter);
            } else if (it.is_run()) {
                first = last = it.letter;
                letters = it.exp;
                weight = sat_mul(it.exp, symbols.weight(it.letter));
            } else {
                assert(it.ref < r);
                const SymbolMeta& sub = meta.rule[it.ref];
                if (sub.empty) continue;
                first = sub.first;
                last = sub.last;
                letters = sub.letters;
                weight = sub.weight;
            }
            if (m.empty) m.first = first;
            m.last = last;
            m.letters = sat_add(m.letters, letters);
            m.weight = sat_add(m.weight, weight);
            m.empty = false;
        }
        meta.rule[r] = m;
    }
    return meta;
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
    RuleId rule = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Structural checks: item sanity (letters in range, run exponents >= 2),
/// at most two rule references per body, references only to lower alive
/// rules, no reference to an empty-valued rule, axiom designation, and the
/// pattern axiom being referenced by no body.
inline ValidationReport validate(const Slp& slp, std::size_t letter_count = 0) {
    if (letter_count == 0) letter_count = slp.alphabet;
    ValidationReport rep;
    auto issue = [&rep](RuleId r, std::string msg) {
        rep.issues.push_back(ValidationIssue{r, std::move(msg)});
    };

    const RuleId n = static_cast<RuleId>(slp.rules.size());
    if (slp.text_axiom >= n || !slp.rules[slp.text_axiom].alive)
        issue(slp.text_axiom, "text axiom is not an alive rule");
    if (slp.pattern_axiom >= n || !slp.rules[slp.pattern_axiom].alive)
        issue(slp.pattern_axiom, "pattern axiom is not an alive rule");

    // Emptiness is decidable bottom-up from structure alone.
    std::vector<char> empty(n, 1);
    for (RuleId r = 0; r < n; ++r) {
        if (!slp.rules[r].alive) continue;
        int refs = 0;
        bool nonempty = false;
        for (const Item& it : slp.rules[r].body) {
            switch (it.kind) {
                case Item::Kind::letter:
                    if (it.letter >= letter_count)
                        issue(r, "letter " + std::to_string(it.letter) + " out of range");
                    nonempty = true;
                    break;
                case Item::Kind::run:
                    if (it.letter >= letter_count)
                        issue(r, "run letter " + std::to_string(it.letter) + " out of range");
                    if (it.exp < 2) issue(r, "run exponent below 2");
                    nonempty = true;
                    break;
                case Item::Kind::ref:
                    ++refs;
                    if (it.ref >= r) {
                        issue(r, "rule " + std::to_string(r) + " references rule " +
                                     std::to_string(it.ref) + " which is not lower");
                    } else if (!slp.rules[it.ref].alive) {
                        issue(r, "reference to removed rule " + std::to_string(it.ref));
                    } else {
                        if (empty[it.ref])
                            issue(r, "reference to empty-valued rule " + std::to_string(it.ref));
                        else
                            nonempty = true;
                    }
                    if (it.ref == slp.pattern_axiom)
                        issue(r, "pattern axiom referenced by rule " + std::to_string(r));
                    break;
                case Item::Kind::dead:
                    issue(r, "dead item escaped an operation");
                    break;
            }
        }
        if (refs > 2) issue(r, "more than two rule references in one body");
        empty[r] = nonempty ? 0 : 1;
    }
    if (slp.text_axiom < n && slp.rules[slp.text_axiom].alive && empty[slp.text_axiom])
        issue(slp.text_axiom, "text axiom derives the empty string");
    if (slp.pattern_axiom < n && slp.rules[slp.pattern_axiom].alive && empty[slp.pattern_axiom])
        issue(slp.pattern_axiom, "pattern axiom derives the empty string");
    return rep;
}

// ---------------------------------------------------------------------------
// Evaluation

/// Decompress one rule's value, refusing (nullopt) if it is longer than
/// `budget` letters. Iterative so deep rule chains cannot overflow the stack.
inline std::optional<std::vector<Letter>> eval_bounded(const Slp& slp, RuleId root,
                                                       std::uint64_t budget) {
    // Letter counts first, so an oversized value is refused without work.
    std::vector<std::uint64_t> letters(slp.rules.size(), 0);
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        std::uint64_t n = 0;
        for (const Item& it : slp.rules[r].body)
            n = sat_add(n, it.is_ref() ? letters[it.ref] : it.explicit_len());
        letters[r] = n;
    }
    if (root >= slp.rules.size() || letters[root] > budget) return std::nullopt;

    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(letters[root]));
    std::vector<std::pair<const Body*, Body::const_iterator>> stack;
    stack.emplace_back(&slp.rules[root].body, slp.rules[root].body.begin());
    while (!stack.empty()) {
        auto& [body, pos] = stack.back();
        if (pos == body->end()) {
            stack.pop_back();
            continue;
        }
        const Item& it = *pos;
        ++pos;
        if (it.is_letter()) {
            out.push_back(it.letter);
        } else if (it.is_run()) {
            out.insert(out.end(), static_cast<std::size_t>(it.exp), it.letter);
        } else if (it.is_ref()) {
            const Body& sub = slp.rules[it.ref].body;
            stack.emplace_back(&sub, sub.begin());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reachability and hygiene

inline std::vector<char> reachable_from(const Slp& slp, RuleId root) {
    std::vector<char> seen(slp.rules.size(), 0);
    std::vector<RuleId> todo{root};
    while (!todo.empty()) {
        RuleId r = todo.back();
        todo.pop_back();
        if (r >= slp.rules.size() || seen[r] || !slp.rules[r].alive) continue;
        seen[r] = 1;
        for (const Item& it : slp.rules[r].body)
            if (it.is_ref()) todo.push_back(it.ref);
    }
    return seen;
}

/// Drop rules reachable from neither axiom.
inline void gc_unreachable(Slp& slp) {
    std::vector<char> keep = reachable_from(slp, slp.text_axiom);
    std::vector<char> pat = reachable_from(slp, slp.pattern_axiom);
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!keep[r] && !pat[r] && slp.rules[r].alive) {
            slp.rules[r].alive = false;
            slp.rules[r].body.clear();
        }
    }
}

/// The axioms must be distinct rules referenced by no body: end fixing
/// rewrites the pattern axiom in place and boundary stripping rewrites the
/// text axiom, neither of which may leak into other values. Wraps an axiom
/// in a fresh top rule when the input violates that.
inline void normalize_axioms(Slp& slp) {
    std::vector<std::uint32_t> ref_count(slp.rules.size() + 2, 0);
    for (const Rule& r : slp.rules) {
        if (!r.alive) continue;
        for (const Item& it : r.body)
            if (it.is_ref()) ref_count[it.ref]++;
    }
    const bool shared = slp.text_axiom == slp.pattern_axiom;
    if (ref_count[slp.text_axiom] > 0 || shared)
        slp.text_axiom = slp.add_rule(Body{Item::make_ref(slp.text_axiom)});
    if (ref_count[slp.pattern_axiom] > 0 || shared)
        slp.pattern_axiom = slp.add_rule(Body{Item::make_ref(slp.pattern_axiom)});
}

/// Join neighbouring items of one letter into a single run; exponent-1 runs
/// become plain letters.
inline void merge_adjacent_runs(Body& body) {
    // Tombstones first, so items they separated become neighbours.
    for (auto it = body.begin(); it != body.end();)
        it = it->is_dead() ? body.erase(it) : std::next(it);
    for (auto it = body.begin(); it != body.end();) {
        auto next = std::next(it);
        if ((it->is_letter() || it->is_run()) && next != body.end() &&
            (next->is_letter() || next->is_run()) && next->letter == it->letter) {
            std::uint64_t total = sat_add(it->explicit_len(), next->explicit_len());
            *it = Item::make_run(it->letter, total);
            body.erase(next);
            continue;  // keep absorbing further neighbours
        }
        if (it->is_run() && it->exp == 1) *it = Item::make_letter(it->letter);
        ++it;
    }
}

inline void merge_adjacent_runs(Slp& slp) {
    for (Rule& r : slp.rules)
        if (r.alive) merge_adjacent_runs(r.body);
}

/// Enforce that empty-valued rules appear in no body (their items are
/// removed; the rules die). Operations maintain this inline, the pass is the
/// phase-boundary backstop.
inline void drop_empty_rules(Slp& slp) {
    std::vector<char> empty(slp.rules.size(), 1);
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        Rule& rule = slp.rules[r];
        if (!rule.alive) continue;
        bool nonempty = false;
        for (auto it = rule.body.begin(); it != rule.body.end();) {
            if (it->is_dead() || (it->is_ref() && empty[it->ref])) {
                it = rule.body.erase(it);
                continue;
            }
            nonempty = true;
            ++it;
        }
        empty[r] = nonempty ? 0 : 1;
        if (!nonempty && r != slp.text_axiom && r != slp.pattern_axiom) {
            rule.alive = false;
            rule.body.clear();
        }
    }
}

/// Renumber letters so the ones present in alive bodies form 0..k-1 in the
/// old relative order. Returns old-id -> new-id (kNoLetter for dropped).
inline std::vector<Letter> renumber_alphabet(Slp& slp, SymbolTable& symbols) {
    std::vector<char> used(symbols.size(), 0);
    for (const Rule& r : slp.rules) {
        if (!r.alive) continue;
        for (const Item& it : r.body)
            if (it.is_letter() || it.is_run()) used[it.letter] = 1;
    }
    std::vector<Letter> old_to_new(symbols.size(), kNoLetter);
    std::vector<Letter> new_to_old;
    for (Letter a = 0; a < used.size(); ++a) {
        if (used[a]) {
            old_to_new[a] = static_cast<Letter>(new_to_old.size());
            new_to_old.push_back(a);
        }
    }
    for (Rule& r : slp.rules) {
        if (!r.alive) continue;
        for (Item& it : r.body)
            if (it.is_letter() || it.is_run()) it.letter = old_to_new[it.letter];
    }
    symbols.remap(new_to_old);
    slp.alphabet = static_cast<Letter>(new_to_old.size());
    return old_to_new;
}

}  // namespace recomp
