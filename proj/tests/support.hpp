#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "recomp/generators.hpp"
#include "recomp/slp.hpp"
#include "recomp/symbols.hpp"

namespace recomp::test {

inline std::vector<Letter> letters_of(const std::string& s) {
    std::vector<Letter> out;
    out.reserve(s.size());
    for (char c : s) out.push_back(static_cast<Letter>(static_cast<unsigned char>(c) - 'a'));
    return out;
}

inline std::string string_of(const std::vector<Letter>& v) {
    std::string out;
    out.reserve(v.size());
    for (Letter l : v) out.push_back(static_cast<char>('a' + l));
    return out;
}

/// Text+pattern instance over a shared rule table, built from plain words.
/// The two words get independent balanced grammars, merged side by side.
inline Slp make_instance(const std::string& text, const std::string& pattern,
                         Letter alphabet = 0) {
    auto tl = letters_of(text);
    auto pl = letters_of(pattern);
    Letter maxl = 0;
    for (Letter l : tl) maxl = std::max(maxl, l);
    for (Letter l : pl) maxl = std::max(maxl, l);
    if (alphabet == 0) alphabet = maxl + 1;
    Slp t = from_text_balanced(tl, alphabet);
    Slp p = from_text_balanced(pl, alphabet);
    // Splice p's rules after t's, shifting references.
    RuleId base = static_cast<RuleId>(t.rules.size());
    for (auto& rule : p.rules) {
        for (auto& item : rule.body)
            if (item.is_ref()) item.ref += base;
        t.rules.push_back(std::move(rule));
    }
    t.pattern_axiom = p.text_axiom + base;
    return t;
}

using recomp::combine;

/// Random word over a small alphabet, length in [1, max_len].
inline std::vector<Letter> random_word(std::mt19937_64& rng, std::size_t max_len,
                                       Letter alphabet) {
    std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
    std::uniform_int_distribution<Letter> let_dist(0, alphabet - 1);
    std::vector<Letter> out(len_dist(rng));
    for (auto& l : out) l = let_dist(rng);
    return out;
}

struct RandomInstance {
    Slp slp;
    std::vector<Letter> text;
    std::vector<Letter> pattern;
};

/// Random text/pattern instance. Half the time the pattern is a substring of
/// the text (so matches exist), otherwise independent (usually no match).
/// Grammars for the two sides are built with different shapes to avoid
/// structural coincidences.
inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_text,
                                      std::size_t max_pattern, Letter alphabet) {
    RandomInstance inst;
    inst.text = random_word(rng, max_text, alphabet);
    if (rng() % 2 == 0 && !inst.text.empty()) {
        std::size_t plen =
            1 + rng() % std::min<std::size_t>(max_pattern, inst.text.size());
        std::size_t start = rng() % (inst.text.size() - plen + 1);
        inst.pattern.assign(inst.text.begin() + static_cast<std::ptrdiff_t>(start),
                            inst.text.begin() + static_cast<std::ptrdiff_t>(start + plen));
    } else {
        inst.pattern = random_word(rng, max_pattern, alphabet);
    }
    Slp t = from_text_random(inst.text, alphabet, rng());
    Slp p = from_text_balanced(inst.pattern, alphabet);
    RuleId base = static_cast<RuleId>(t.rules.size());
    for (auto& rule : p.rules) {
        for (auto& item : rule.body)
            if (item.is_ref()) item.ref += base;
        t.rules.push_back(std::move(rule));
    }
    t.pattern_axiom = p.text_axiom + base;
    inst.slp = std::move(t);
    return inst;
}

}  // namespace recomp::test
