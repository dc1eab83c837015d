#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "recomp/slp.hpp"

namespace recomp {

/// Balanced binary grammar for an explicit string: one terminal rule per
/// distinct letter used, then pairwise merges level by level. Rule count is
/// linear in the string length, derivation depth logarithmic.
inline Slp from_text_balanced(std::span<const Letter> text, Letter alphabet) {
    assert(!text.empty());
    Slp slp;
    slp.alphabet = alphabet;
    std::vector<RuleId> letter_rule(alphabet, 0);
    std::vector<char> have(alphabet, 0);
    std::vector<RuleId> level;
    level.reserve(text.size());
    for (Letter a : text) {
        assert(a < alphabet);
        if (!have[a]) {
            letter_rule[a] = slp.add_rule(Body{Item::make_letter(a)});
            have[a] = 1;
        }
        level.push_back(letter_rule[a]);
    }
    while (level.size() > 1) {
        std::vector<RuleId> next;
        next.reserve(level.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(slp.add_rule(Body{Item::make_ref(level[i]), Item::make_ref(level[i + 1])}));
        if (level.size() % 2) next.push_back(level.back());
        level.swap(next);
    }
    slp.text_axiom = slp.pattern_axiom = level[0];
    return slp;
}

/// Like from_text_balanced but with seeded random split points, so the same
/// string gets a structurally different grammar. Useful for equality tests.
inline Slp from_text_random(std::span<const Letter> text, Letter alphabet, std::uint64_t seed) {
    assert(!text.empty());
    Slp slp;
    slp.alphabet = alphabet;
    std::mt19937_64 rng(seed);
    std::vector<RuleId> letter_rule(alphabet, 0);
    std::vector<char> have(alphabet, 0);
    // Recursive random split, managed iteratively: build(lo, hi) -> rule.
    struct Frame {
        std::size_t lo, hi, mid;
        RuleId left = 0;
        int stage = 0;
    };
    std::vector<Frame> stack;
    std::vector<RuleId> results;
    stack.push_back(Frame{0, text.size(), 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.hi - f.lo == 1) {
            Letter a = text[f.lo];
            if (!have[a]) {
                letter_rule[a] = slp.add_rule(Body{Item::make_letter(a)});
                have[a] = 1;
            }
            results.push_back(letter_rule[a]);
            stack.pop_back();
            continue;
        }
        if (f.stage == 0) {
            f.mid = f.lo + 1 + rng() % (f.hi - f.lo - 1);
            f.stage = 1;
            stack.push_back(Frame{f.lo, f.mid, 0});
        } else if (f.stage == 1) {
            f.left = results.back();
            results.pop_back();
            f.stage = 2;
            stack.push_back(Frame{f.mid, f.hi, 0});
        } else {
            RuleId right = results.back();
            results.pop_back();
            results.push_back(slp.add_rule(Body{Item::make_ref(f.left), Item::make_ref(right)}));
            stack.pop_back();
        }
    }
    slp.text_axiom = slp.pattern_axiom = results.back();
    return slp;
}

/// Two single-value grammars spliced into one rule table: the first supplies
/// the text axiom, the second the pattern axiom.
inline Slp combine(Slp text_side, const Slp& pattern_side) {
    RuleId base = static_cast<RuleId>(text_side.rules.size());
    for (const Rule& rule : pattern_side.rules) {
        Rule copy = rule;
        for (Item& item : copy.body)
            if (item.is_ref()) item.ref += base;
        text_side.rules.push_back(std::move(copy));
    }
    text_side.pattern_axiom = pattern_side.pattern_axiom + base;
    text_side.alphabet = std::max(text_side.alphabet, pattern_side.alphabet);
    return text_side;
}

/// Fibonacci-word grammar: value(X_1) = b, value(X_2) = a,
/// value(X_i) = value(X_{i-1}) value(X_{i-2}). Letters: a = 0, b = 1.
inline Slp gen_fibonacci(unsigned k) {
    assert(k >= 1);
    Slp slp;
    slp.alphabet = 2;
    slp.add_rule(Body{Item::make_letter(1)});
    if (k >= 2) slp.add_rule(Body{Item::make_letter(0)});
    for (unsigned i = 3; i <= k; ++i)
        slp.add_rule(Body{Item::make_ref(static_cast<RuleId>(i - 2)),
                          Item::make_ref(static_cast<RuleId>(i - 3))});
    slp.text_axiom = slp.pattern_axiom = static_cast<RuleId>(slp.rules.size() - 1);
    return slp;
}

/// a^exp by binary doubling; alphabet is letter+1 so the letter id is valid.
inline Slp gen_power(Letter letter, std::uint64_t exp) {
    assert(exp >= 1);
    Slp slp;
    slp.alphabet = letter + 1;
    RuleId bit = slp.add_rule(Body{Item::make_letter(letter)});  // letter^(2^0)
    RuleId acc = 0;
    bool have_acc = false;
    std::uint64_t remaining = exp;
    while (true) {
        if (remaining & 1) {
            acc = have_acc ? slp.add_rule(Body{Item::make_ref(acc), Item::make_ref(bit)}) : bit;
            have_acc = true;
        }
        remaining >>= 1;
        if (remaining == 0) break;
        bit = slp.add_rule(Body{Item::make_ref(bit), Item::make_ref(bit)});
    }
    slp.text_axiom = slp.pattern_axiom = acc;
    gc_unreachable(slp);
    return slp;
}

/// Thue-Morse grammar: value length 2^k over letters {0, 1}.
inline Slp gen_thue_morse(unsigned k) {
    Slp slp;
    slp.alphabet = 2;
    RuleId a = slp.add_rule(Body{Item::make_letter(0)});
    RuleId b = slp.add_rule(Body{Item::make_letter(1)});
    for (unsigned i = 0; i < k; ++i) {
        RuleId a2 = slp.add_rule(Body{Item::make_ref(a), Item::make_ref(b)});
        RuleId b2 = slp.add_rule(Body{Item::make_ref(b), Item::make_ref(a)});
        a = a2;
        b = b2;
    }
    slp.text_axiom = slp.pattern_axiom = a;
    gc_unreachable(slp);
    return slp;
}

/// Seeded random binary grammar: terminal rules for every letter, then
/// `rules` rules pairing uniformly random existing rules. Deterministic in
/// the seed; value length is unbounded (counters saturate).
inline Slp gen_random(std::uint64_t seed, std::uint32_t rules, Letter alphabet) {
    assert(alphabet >= 1);
    Slp slp;
    slp.alphabet = alphabet;
    std::mt19937_64 rng(seed);
    for (Letter a = 0; a < alphabet; ++a) slp.add_rule(Body{Item::make_letter(a)});
    for (std::uint32_t i = 0; i < rules; ++i) {
        RuleId left = static_cast<RuleId>(rng() % slp.rules.size());
        RuleId right = static_cast<RuleId>(rng() % slp.rules.size());
        slp.add_rule(Body{Item::make_ref(left), Item::make_ref(right)});
    }
    slp.text_axiom = slp.pattern_axiom = static_cast<RuleId>(slp.rules.size() - 1);
    return slp;
}

/// Random binary grammar whose value length never exceeds max_len. Pairs are
/// drawn at random and rejected while they would overshoot; generation stops
/// when max_rules is reached or no pair fits.
inline Slp gen_random_bounded(std::uint64_t seed, Letter alphabet, std::uint64_t max_len,
                              std::uint32_t max_rules) {
    assert(alphabet >= 1 && max_len >= 1);
    Slp slp;
    slp.alphabet = alphabet;
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> len;
    for (Letter a = 0; a < alphabet; ++a) {
        slp.add_rule(Body{Item::make_letter(a)});
        len.push_back(1);
    }
    for (std::uint32_t i = 0; i < max_rules; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < 24 && !placed; ++attempt) {
            RuleId left = static_cast<RuleId>(rng() % slp.rules.size());
            RuleId right = static_cast<RuleId>(rng() % slp.rules.size());
            std::uint64_t total = sat_add(len[left], len[right]);
            if (total > max_len) continue;
            slp.add_rule(Body{Item::make_ref(left), Item::make_ref(right)});
            len.push_back(total);
            placed = true;
        }
        if (!placed) break;
    }
    slp.text_axiom = slp.pattern_axiom = static_cast<RuleId>(slp.rules.size() - 1);
    gc_unreachable(slp);
    return slp;
}

}  // namespace recomp
