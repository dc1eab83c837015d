// Acceptance gate: ten checks covering correctness against the oracle,
// equality testing, shipped worked examples, exponential-scale instances,
// phase-count and grammar-size discipline, structural invariants of the
// uncrossing steps, the explicit-phase shrink bound, block-length sorting,
// and the decompression baseline comparison. One PASS/FAIL line each; the
// exit code is the number of failures. Constants and tolerances are pinned
// here so a regression cannot be argued away.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "recomp/explicit_algos.hpp"
#include "recomp/fcpm.hpp"
#include "recomp/generators.hpp"
#include "recomp/oracle.hpp"
#include "recomp/slp_io.hpp"

using namespace recomp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::vector<Letter> random_word(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                                Letter alphabet) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<Letter> pick(0, alphabet - 1);
    std::vector<Letter> w(len(rng));
    for (Letter& l : w) l = pick(rng);
    return w;
}

std::optional<Slp> load_instance(const std::string& name, std::string& err) {
    std::string path = std::string(RECOMP_TESTDATA_DIR) + "/" + name;
    std::ifstream in(path);
    if (!in) {
        err = "cannot open " + path;
        return std::nullopt;
    }
    io::ParseResult res = io::parse_slp(in);
    if (!res.ok()) {
        err = path + ": " + res.error;
        return std::nullopt;
    }
    return std::move(res.slp);
}

// Value-based junction census, independent of the scan's metadata: first and
// last letters come from fully decompressed rule values.
struct Junctions {
    std::set<recompress::LetterPair> crossing_pairs;  // a != b, spans a reference
    bool crossing_block = false;                      // a == b, spans a reference
};

std::optional<Junctions> classify_junctions_bruteforce(const Slp& slp) {
    std::vector<std::vector<Letter>> value(slp.rules.size());
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        auto v = eval_bounded(slp, r, std::uint64_t{1} << 22);
        if (!v) return std::nullopt;
        value[r] = std::move(*v);
    }
    Junctions out;
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        const Body& body = slp.rules[r].body;
        for (auto it = body.begin(); it != body.end(); ++it) {
            auto next = std::next(it);
            if (next == body.end()) break;
            if (it->is_ref() && value[it->ref].empty()) continue;
            if (next->is_ref() && value[next->ref].empty()) continue;
            Letter a = it->is_ref() ? value[it->ref].back() : it->letter;
            Letter b = next->is_ref() ? value[next->ref].front() : next->letter;
            if (!it->is_ref() && !next->is_ref()) continue;
            if (a == b)
                out.crossing_block = true;
            else
                out.crossing_pairs.insert({a, b});
        }
    }
    return out;
}

// --------------------------------------------------------------------------
// 1. Matching agrees with the decompress-and-search oracle on 500 random
//    instances (text <= 10^4, pattern <= 10^3), full position lists, < 60s.

bool criterion_oracle_equivalence(std::string& note) {
    auto start = Clock::now();
    std::mt19937_64 rng(0xACCE51);
    std::size_t matched = 0;
    std::uint64_t max_text = 0;
    for (int round = 0; round < 500; ++round) {
        Letter alphabet = static_cast<Letter>(1 + round % 4);
        // Referencing generators plateau early, so half the texts are random
        // grammars of full-size random words to actually span the envelope.
        Slp text = round % 2 == 0
                       ? from_text_random(random_word(rng, 1, 10000, alphabet), alphabet, rng())
                       : gen_random_bounded(rng(), alphabet, 10000,
                                            static_cast<std::uint32_t>(8 + round % 48));
        auto text_word = eval_bounded(text, text.text_axiom, 10000);
        if (!text_word || text_word->empty()) {
            note = "text generator produced an unusable value";
            return false;
        }
        max_text = std::max<std::uint64_t>(max_text, text_word->size());
        Slp pattern;
        if (round % 2 == 0) {
            std::uniform_int_distribution<std::size_t> at(0, text_word->size() - 1);
            std::size_t from = at(rng);
            std::size_t max_len = std::min<std::size_t>(1000, text_word->size() - from);
            std::uniform_int_distribution<std::size_t> len(1, max_len);
            std::span<const Letter> sub(text_word->data() + from, len(rng));
            pattern = from_text_balanced(sub, alphabet);
        } else if (round % 4 == 1) {
            pattern = from_text_random(random_word(rng, 1, 1000, alphabet), alphabet, rng());
        } else {
            pattern = gen_random_bounded(rng(), alphabet, 1000,
                                         static_cast<std::uint32_t>(4 + round % 12));
        }
        Slp inst = combine(std::move(text), pattern);

        auto expect = oracle::oracle_fcpm(inst, 100000);
        if (!expect) {
            note = "oracle unexpectedly refused a budgeted instance";
            return false;
        }
        fcpm::Options opt;
        opt.strategy = round % 2 ? fcpm::Strategy::binary : fcpm::Strategy::greedy;
        fcpm::OccurrenceSet occ = fcpm::fcpm(std::move(inst), opt);
        std::uint64_t count = fcpm::count(occ);
        std::uint64_t first = fcpm::position(occ, fcpm::Which::first).value_or(0);
        std::uint64_t last = fcpm::position(occ, fcpm::Which::last).value_or(0);
        if (count != expect->count || first != expect->first || last != expect->last ||
            fcpm::enumerate(occ, count) != expect->positions) {
            note = "disagreement with the oracle at round " + std::to_string(round);
            return false;
        }
        matched += count > 0;
    }
    double secs = seconds_since(start);
    note = "500/500 instances agree, " + std::to_string(matched) +
           " with occurrences, longest text " + std::to_string(max_text) + ", " + fmt(secs) +
           "s";
    return secs < 60.0;
}

// --------------------------------------------------------------------------
// 2. Equality testing agrees with decompressed comparison on 1000 pairs,
//    half equal via independent re-grammaring, half mutated, < 60s.

bool criterion_equality(std::string& note) {
    auto start = Clock::now();
    std::mt19937_64 rng(0xE9A117);
    std::size_t equal_pairs = 0;
    for (int round = 0; round < 1000; ++round) {
        Letter alphabet = static_cast<Letter>(1 + round % 4);
        std::vector<Letter> wa = random_word(rng, 2, 2000, alphabet);
        std::vector<Letter> wb = wa;
        if (round % 2) {
            std::uniform_int_distribution<std::size_t> at(0, wb.size() - 1);
            std::size_t i = at(rng);
            switch (alphabet == 1 ? 1 + rng() % 2 : rng() % 3) {
                case 0:
                    wb[i] = static_cast<Letter>((wb[i] + 1 + rng() % (alphabet - 1)) % alphabet);
                    break;
                case 1:
                    wb.insert(wb.begin() + static_cast<std::ptrdiff_t>(i),
                              static_cast<Letter>(rng() % alphabet));
                    break;
                default:
                    wb.erase(wb.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        bool expected = wa == wb;
        Slp inst = combine(from_text_balanced(wa, alphabet), from_text_random(wb, alphabet, rng()));
        if (fcpm::equal_slp(std::move(inst)) != expected) {
            note = "disagreement with word comparison at round " + std::to_string(round);
            return false;
        }
        equal_pairs += expected;
    }
    double secs = seconds_since(start);
    note = "1000/1000 pairs agree, " + std::to_string(equal_pairs) + " equal, " + fmt(secs) + "s";
    return secs < 60.0;
}

// --------------------------------------------------------------------------
// 3. The shipped worked instances reproduce exactly.

bool criterion_worked_examples(std::string& note) {
    struct Expect {
        const char* file;
        std::vector<std::uint64_t> positions;
    };
    const std::vector<Expect> table = {
        {"ababa_baba.slp", {2}},
        {"aaab_aab.slp", {2}},
        {"ababa_bab.slp", {2}},
        {"fib_seam.slp", {1, 4, 6, 9}},
    };
    for (const Expect& e : table) {
        std::string err;
        auto slp = load_instance(e.file, err);
        if (!slp) {
            note = err;
            return false;
        }
        fcpm::OccurrenceSet occ = fcpm::fcpm(std::move(*slp));
        if (fcpm::count(occ) != e.positions.size() ||
            fcpm::position(occ, fcpm::Which::first).value_or(0) != e.positions.front() ||
            fcpm::enumerate(occ, e.positions.size()) != e.positions) {
            note = std::string(e.file) + " did not reproduce";
            return false;
        }
    }
    note = "4 instances reproduce (count, first, positions)";
    return true;
}

// --------------------------------------------------------------------------
// 4. a^(2^60) vs a^(2^20): analytically forced answer in under a second.

bool criterion_exponential(std::string& note) {
    auto start = Clock::now();
    Slp inst = combine(gen_power(0, std::uint64_t{1} << 60), gen_power(0, std::uint64_t{1} << 20));
    fcpm::OccurrenceSet occ = fcpm::fcpm(std::move(inst));
    const std::uint64_t expect = (std::uint64_t{1} << 60) - (std::uint64_t{1} << 20) + 1;
    double secs = seconds_since(start);
    if (fcpm::count(occ) != expect || fcpm::position(occ, fcpm::Which::first) != 1 ||
        fcpm::position(occ, fcpm::Which::last) != expect) {
        note = "wrong analytic answer";
        return false;
    }
    note = "count 2^60-2^20+1 exact, " + fmt(secs) + "s";
    return secs < 1.0;
}

// --------------------------------------------------------------------------
// 5. Phase count on Fibonacci k = 10..80: hard cap 64*log2(M)+16 per
//    instance (M = pattern length), and the trend of phases against
//    log2(M) is non-increasing after k = 20. The trend is measured over a
//    4-step window in exact integer arithmetic: the raw per-instance ratio
//    cannot be monotone, since phases is an integer that steps by one while
//    log2(M) grows by log2(phi) ~ 0.69, which bumps the ratio at every step
//    whenever the ratio is below 1/log2(phi) ~ 1.44; and log2(M) steps
//    themselves oscillate around log2(phi) while the Fibonacci ratios
//    converge, so a float slope wiggles at the 1e-4 level. The window
//    denominator is asymptotically constant (4*log2(phi)), so a
//    non-increasing window delta is a non-increasing trend slope.

bool criterion_phase_count(std::string& note) {
    std::vector<double> lg;
    std::vector<std::size_t> phases;
    double max_ratio = 0;
    for (unsigned k = 10; k <= 80; ++k) {
        Slp inst = combine(gen_fibonacci(k), gen_fibonacci(k - 2));
        SymbolTable symbols(inst.alphabet);
        SlpMeta meta = compute_meta(inst, symbols);
        const double lg_m = std::log2(static_cast<double>(meta.of(inst.pattern_axiom).weight));
        std::vector<fcpm::PhaseStats> trace;
        fcpm::Options opt;
        opt.trace = &trace;
        fcpm::OccurrenceSet occ = fcpm::fcpm(std::move(inst), opt);
        if (!occ.possible) {
            note = "k=" + std::to_string(k) + " unexpectedly found no match";
            return false;
        }
        if (static_cast<double>(trace.size()) > 64.0 * lg_m + 16.0) {
            note = "k=" + std::to_string(k) + " exceeded the phase cap";
            return false;
        }
        lg.push_back(lg_m);
        phases.push_back(trace.size());
        max_ratio = std::max(max_ratio, static_cast<double>(trace.size()) / lg_m);
    }
    auto delta = [&](std::size_t i) { return phases[i + 4] - phases[i]; };
    // k = 10 + i; the trend check starts at k = 20.
    for (std::size_t i = 10; i + 5 < lg.size(); ++i) {
        if (delta(i + 1) > delta(i)) {
            note = "trend rose at k=" + std::to_string(11 + i);
            return false;
        }
    }
    const std::size_t last = lg.size() - 5;
    const double slope = static_cast<double>(delta(last)) / (lg[last + 4] - lg[last]);
    note = "71 instances within cap, max phases/log2(M) " + fmt(max_ratio) +
           ", trend slope " + fmt(slope) + " non-increasing after k=20";
    return true;
}

// --------------------------------------------------------------------------
// 6. Grammar size across phases: greedy max |G| <= C*(n+m) and binary
//    max |G| <= C*(n+m)*log2(n+m+2), one constant C <= 200 for the whole
//    suite. |G| is measured in body items at the input and at every phase
//    boundary.

bool criterion_grammar_size(std::string& note) {
    std::vector<Slp> suite;
    for (unsigned k = 10; k <= 60; ++k)
        suite.push_back(combine(gen_fibonacci(k), gen_fibonacci(k - 2)));
    for (unsigned k = 6; k <= 20; ++k)
        suite.push_back(combine(gen_thue_morse(k), gen_thue_morse(k - 2)));
    for (unsigned k = 4; k <= 40; k += 4)
        suite.push_back(combine(gen_power(0, std::uint64_t{1} << k),
                                gen_power(0, std::uint64_t{1} << (k / 2))));
    std::mt19937_64 rng(0x6E0A11);
    for (int round = 0; round < 100; ++round) {
        Letter alphabet = static_cast<Letter>(1 + round % 4);
        Slp text = round % 2 == 0
                       ? from_text_random(random_word(rng, 1, 4000, alphabet), alphabet, rng())
                       : gen_random_bounded(rng(), alphabet, 4000,
                                            static_cast<std::uint32_t>(8 + round % 40));
        Slp pattern = gen_random_bounded(rng(), alphabet, 32, 16);
        suite.push_back(combine(std::move(text), pattern));
    }

    double c_greedy = 0, c_binary = 0;
    for (const Slp& inst : suite) {
        const double nm = static_cast<double>(grammar_size(inst));
        for (fcpm::Strategy strategy : {fcpm::Strategy::greedy, fcpm::Strategy::binary}) {
            std::vector<fcpm::PhaseStats> trace;
            fcpm::Options opt;
            opt.strategy = strategy;
            opt.trace = &trace;
            fcpm::OccurrenceSet occ = fcpm::fcpm(inst, opt);
            (void)occ;
            std::size_t max_g = grammar_size(inst);
            for (const fcpm::PhaseStats& row : trace) max_g = std::max(max_g, row.grammar);
            if (strategy == fcpm::Strategy::greedy)
                c_greedy = std::max(c_greedy, static_cast<double>(max_g) / nm);
            else
                c_binary = std::max(c_binary,
                                    static_cast<double>(max_g) / (nm * std::log2(nm + 2.0)));
        }
    }
    note = std::to_string(suite.size()) + " instances, C_greedy " + fmt(c_greedy) +
           ", C_binary " + fmt(c_binary) + " (cap 200)";
    return c_greedy <= 200.0 && c_binary <= 200.0;
}

// --------------------------------------------------------------------------
// 7. Structural invariants on 200 budgeted random instances: brute-force
//    junction classification agrees with the scan; pop leaves no covered
//    crossing pair; block uncrossing leaves no crossing block; both preserve
//    the axiom values; greedy coverage is at least a quarter of the crossing
//    mass by exact recount; distinct crossing pairs number at most 4(n+m).

bool criterion_structural(std::string& note) {
    std::mt19937_64 rng(0x57C0C7);
    for (int round = 0; round < 200; ++round) {
        Letter alphabet = static_cast<Letter>(1 + round % 4);
        Slp slp = gen_random_bounded(rng(), alphabet, 2000,
                                     static_cast<std::uint32_t>(6 + round % 36));
        normalize_axioms(slp);
        SymbolTable symbols(slp.alphabet);
        const std::size_t nm = grammar_size(slp);
        auto text_before = eval_bounded(slp, slp.text_axiom, std::uint64_t{1} << 22);
        auto pattern_before = eval_bounded(slp, slp.pattern_axiom, std::uint64_t{1} << 22);
        auto junctions = classify_junctions_bruteforce(slp);
        if (!text_before || !pattern_before || !junctions) {
            note = "round " + std::to_string(round) + ": instance exceeded the eval budget";
            return false;
        }

        recompress::PairScan scan = recompress::scan_pairs(slp, symbols);
        if (scan.crossing_pairs() != junctions->crossing_pairs) {
            note = "round " + std::to_string(round) + ": scan disagrees with brute force";
            return false;
        }
        if (junctions->crossing_pairs.size() > 4 * nm) {
            note = "round " + std::to_string(round) + ": too many crossing pairs";
            return false;
        }

        recompress::PairCounts counts;
        std::uint64_t total = 0;
        for (const recompress::PairGroup& g : scan.groups) {
            if (!g.crossing) continue;
            counts[{g.a, g.b}] = g.rule_appearances;
            total += g.rule_appearances;
        }
        recompress::Partition part = recompress::greedy_partition(counts, symbols.size());
        std::uint64_t covered = 0;
        for (const auto& [pr, c] : counts)
            if (part.in_left(pr.first) && part.in_right(pr.second)) covered += c;
        if (4 * covered < total) {
            note = "round " + std::to_string(round) + ": greedy coverage below a quarter";
            return false;
        }

        Slp popped = slp;
        recompress::pop(popped, part);
        auto after_pop = classify_junctions_bruteforce(popped);
        if (!after_pop) {
            note = "round " + std::to_string(round) + ": post-pop eval budget";
            return false;
        }
        for (const recompress::LetterPair& pr : after_pop->crossing_pairs)
            if (part.in_left(pr.first) && part.in_right(pr.second)) {
                note = "round " + std::to_string(round) + ": covered pair still crossing";
                return false;
            }
        if (eval_bounded(popped, popped.text_axiom, std::uint64_t{1} << 22) != text_before ||
            eval_bounded(popped, popped.pattern_axiom, std::uint64_t{1} << 22) !=
                pattern_before) {
            note = "round " + std::to_string(round) + ": pop changed a value";
            return false;
        }

        Slp unblocked = slp;
        recompress::remove_crossing_blocks(unblocked);
        auto after_blocks = classify_junctions_bruteforce(unblocked);
        if (!after_blocks || after_blocks->crossing_block) {
            note = "round " + std::to_string(round) + ": crossing block survived";
            return false;
        }
        if (eval_bounded(unblocked, unblocked.text_axiom, std::uint64_t{1} << 22) !=
                text_before ||
            eval_bounded(unblocked, unblocked.pattern_axiom, std::uint64_t{1} << 22) !=
                pattern_before) {
            note = "round " + std::to_string(round) + ": block uncrossing changed a value";
            return false;
        }
    }
    note = "200/200 instances hold all six invariants";
    return true;
}

// --------------------------------------------------------------------------
// 8. Explicit phase shrink: every phase on a word of length > 1 leaves at
//    most (2*old+1)/3 letters, over 1000 random words.

bool criterion_explicit_shrink(std::string& note) {
    std::mt19937_64 rng(0x5B8124);
    std::size_t phases_checked = 0;
    for (int round = 0; round < 500; ++round) {
        Letter alphabet = static_cast<Letter>(1 + round % 4);
        explicit_algos::Word a = random_word(rng, 2, 500, alphabet);
        explicit_algos::Word b = round % 5 == 0 ? a : random_word(rng, 2, 500, alphabet);
        SymbolTable symbols(alphabet);
        for (int phase = 0; a.size() > 1 || b.size() > 1; ++phase) {
            if (phase >= 100) {
                note = "round " + std::to_string(round) + " did not reach single letters";
                return false;
            }
            std::size_t old_a = a.size(), old_b = b.size();
            explicit_algos::et_phase(a, b, symbols);
            if ((old_a > 1 && 3 * a.size() > 2 * old_a + 1) ||
                (old_b > 1 && 3 * b.size() > 2 * old_b + 1)) {
                note = "round " + std::to_string(round) + " shrank too little in one phase";
                return false;
            }
            ++phases_checked;
        }
    }
    note = "1000 words, " + std::to_string(phases_checked) +
           " phases all within (2n+1)/3";
    return true;
}

// --------------------------------------------------------------------------
// 9. Block-length sorting: after thinning, numeric order equals
//    lexicographic order on (rank, offset) for all pairs of 1000 random
//    represented lengths, offsets stay within twice the thinning parameter,
//    and every value is preserved exactly.

bool criterion_blocklen(std::string& note) {
    std::mt19937_64 rng(0xB10C4);
    const std::uint64_t g = 400;  // plays the grammar size |G|
    blocklen::CommonTable table;
    std::uniform_int_distribution<std::uint64_t> common_val(1, std::uint64_t{1} << 40);
    std::vector<std::size_t> interned;
    for (int i = 0; i < 300; ++i)
        interned.push_back(table.intern(common_val(rng), i % 2 == 0
                                                             ? blocklen::CommonOrigin::nonterminal_block
                                                             : blocklen::CommonOrigin::concatenation));

    std::uniform_int_distribution<std::uint64_t> offset(0, g);
    std::uniform_int_distribution<std::size_t> pick(0, interned.size() - 1);
    std::vector<blocklen::BlockLen> lens(1000);
    std::vector<std::uint64_t> values;
    for (blocklen::BlockLen& len : lens) {
        if (rng() % 10 < 3)
            len.common = blocklen::kZeroCommon;
        else
            len.common = interned[pick(rng)];
        len.offset = offset(rng);
        values.push_back(len.value(table));
    }

    blocklen::ThinResult thin = blocklen::thin_commons(table, g);
    std::uint64_t max_offset = 0;
    for (std::size_t i = 0; i < lens.size(); ++i) {
        thin.redirect(lens[i], table);
        if (lens[i].value(table) != values[i]) {
            note = "thinning changed a value";
            return false;
        }
        max_offset = std::max(max_offset, lens[i].offset);
    }
    if (max_offset > 2 * g) {
        note = "offset " + std::to_string(max_offset) + " exceeds 2g";
        return false;
    }
    if (!blocklen::lex_order_valid(lens, table, thin)) {
        note = "lexicographic order diverged from numeric order";
        return false;
    }
    note = "1000 lengths, all pairs ordered, max offset " + std::to_string(max_offset) +
           " <= " + std::to_string(2 * g) + ", values exact";
    return true;
}

// --------------------------------------------------------------------------
// 10. Desk-scale baseline comparison: on instances whose values exceed 10^8
//     letters the matcher answers in under a second while the
//     decompress-and-search baseline refuses its budget.

bool criterion_baseline(std::string& note) {
    Slp power = combine(gen_power(0, std::uint64_t{1} << 30), gen_power(0, std::uint64_t{1} << 15));
    Slp fib = combine(gen_fibonacci(45), gen_fibonacci(43));
    if (oracle::oracle_fcpm(power, 100000000) || oracle::oracle_fcpm(fib, 100000000)) {
        note = "baseline failed to refuse a >10^8 instance";
        return false;
    }
    auto start = Clock::now();
    fcpm::OccurrenceSet p = fcpm::fcpm(std::move(power));
    const std::uint64_t expect = (std::uint64_t{1} << 30) - (std::uint64_t{1} << 15) + 1;
    if (fcpm::count(p) != expect || fcpm::position(p, fcpm::Which::first) != 1) {
        note = "wrong power answer";
        return false;
    }
    double power_secs = seconds_since(start);
    start = Clock::now();
    fcpm::OccurrenceSet f = fcpm::fcpm(std::move(fib));
    if (fcpm::count(f) == 0 || fcpm::position(f, fcpm::Which::first) != 1) {
        note = "wrong Fibonacci answer";
        return false;
    }
    double fib_secs = seconds_since(start);
    note = "baseline refused both, matcher " + fmt(power_secs) + "s / " + fmt(fib_secs) + "s";
    return power_secs < 1.0 && fib_secs < 1.0;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "oracle equivalence", criterion_oracle_equivalence},
        {2, "equality testing", criterion_equality},
        {3, "worked examples", criterion_worked_examples},
        {4, "exponential-scale analytic answer", criterion_exponential},
        {5, "phase-count bound", criterion_phase_count},
        {6, "grammar-size discipline", criterion_grammar_size},
        {7, "structural invariants", criterion_structural},
        {8, "explicit phase shrink", criterion_explicit_shrink},
        {9, "block-length sorting", criterion_blocklen},
        {10, "baseline comparison", criterion_baseline},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string note;
        bool ok = c.run(note);
        failures += !ok;
        std::printf("%s %2d  %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.name, note.c_str());
        std::fflush(stdout);
    }
    return failures;
}
