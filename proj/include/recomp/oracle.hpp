#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "recomp/slp.hpp"

namespace recomp::oracle {

/// Direct window comparison, the simplest possible matcher. 1-based
/// positions of all (possibly overlapping) occurrences.
inline std::vector<std::uint64_t> naive_match_scan(const std::vector<Letter>& text,
                                                   const std::vector<Letter>& pattern) {
    std::vector<std::uint64_t> out;
    if (pattern.empty() || pattern.size() > text.size()) return out;
    for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
        std::size_t j = 0;
        while (j < pattern.size() && text[i + j] == pattern[j]) ++j;
        if (j == pattern.size()) out.push_back(i + 1);
    }
    return out;
}

/// Knuth-Morris-Pratt matcher, structurally independent from the window scan
/// so the two can referee each other.
inline std::vector<std::uint64_t> naive_match_kmp(const std::vector<Letter>& text,
                                                  const std::vector<Letter>& pattern) {
    std::vector<std::uint64_t> out;
    const std::size_t m = pattern.size();
    if (m == 0 || m > text.size()) return out;
    std::vector<std::size_t> fail(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
        std::size_t k = fail[i - 1];
        while (k > 0 && pattern[i] != pattern[k]) k = fail[k - 1];
        if (pattern[i] == pattern[k]) ++k;
        fail[i] = k;
    }
    std::size_t k = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        while (k > 0 && text[i] != pattern[k]) k = fail[k - 1];
        if (text[i] == pattern[k]) ++k;
        if (k == m) {
            out.push_back(i + 2 - m);
            k = fail[k - 1];
        }
    }
    return out;
}

struct CrossingReport {
    /// Pairs (a, b), a != b, with at least one occurrence spanning a rule
    /// reference boundary in some alive rule.
    std::set<std::pair<Letter, Letter>> crossing_pairs;
    /// Letters with a crossing block, i.e. the pair aa spans such a boundary.
    std::set<Letter> crossing_block_letters;
    bool refused = false;  ///< some rule value exceeded the budget
};

/// Definition-level crossing classifier: decompress every alive rule and mark
/// each adjacent position pair that straddles the boundary of a rule
/// reference item. Pure reference implementation, cost linear in the total
/// decompressed size of all rules, refusing beyond `budget` letters per rule.
inline CrossingReport classify_crossing_bruteforce(const Slp& slp, std::uint64_t budget) {
    CrossingReport rep;
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        auto value = eval_bounded(slp, r, budget);
        if (!value) {
            rep.refused = true;
            return rep;
        }
        // Boundary offsets where an adjacent pair counts as crossing: an edge
        // at offset p (between positions p-1 and p) qualifies if the item on
        // either side is a rule reference.
        std::vector<char> edge_crossing(value->size() + 1, 0);
        std::uint64_t off = 0;
        bool prev_ref = false;
        bool first = true;
        for (const Item& it : slp.rules[r].body) {
            std::uint64_t len = 0;
            if (it.is_ref()) {
                auto sub = eval_bounded(slp, it.ref, budget);
                len = sub ? sub->size() : 0;
            } else {
                len = it.explicit_len();
            }
            if (len == 0) continue;
            if (!first && off < edge_crossing.size() && (prev_ref || it.is_ref()))
                edge_crossing[off] = 1;
            off += len;
            prev_ref = it.is_ref();
            first = false;
        }
        for (std::size_t p = 1; p < value->size(); ++p) {
            if (!edge_crossing[p]) continue;
            Letter a = (*value)[p - 1];
            Letter b = (*value)[p];
            if (a == b)
                rep.crossing_block_letters.insert(a);
            else
                rep.crossing_pairs.insert({a, b});
        }
    }
    return rep;
}

struct OracleAnswer {
    std::uint64_t count = 0;
    std::uint64_t first = 0;  ///< 0 when there is no occurrence
    std::uint64_t last = 0;
    std::vector<std::uint64_t> positions;
};

/// Decompress-and-search baseline. Refuses (nullopt) when either value
/// exceeds the budget; the compressed matcher has no such limit.
inline std::optional<OracleAnswer> oracle_fcpm(const Slp& slp, std::uint64_t budget = 100000) {
    auto text = eval_bounded(slp, slp.text_axiom, budget);
    auto pattern = eval_bounded(slp, slp.pattern_axiom, budget);
    if (!text || !pattern) return std::nullopt;
    OracleAnswer ans;
    ans.positions = naive_match_scan(*text, *pattern);
    ans.count = ans.positions.size();
    if (!ans.positions.empty()) {
        ans.first = ans.positions.front();
        ans.last = ans.positions.back();
    }
    return ans;
}

}  // namespace recomp::oracle
