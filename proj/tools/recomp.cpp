// Command-line surface for the recompression library: SLP validation,
// bounded decompression, matching and equality by recompression, instance
// generators, a JSON-lines benchmark harness, and debug dumps of the
// engine's intermediate state. Exit codes: 0 success/true/match, 1
// false/no-match, 2 usage or validation error. Stdout carries answers,
// stderr diagnostics and traces.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "recomp/explicit_algos.hpp"
#include "recomp/fcpm.hpp"
#include "recomp/generators.hpp"
#include "recomp/oracle.hpp"
#include "recomp/slp_io.hpp"

using namespace recomp;
using nlohmann::json;

namespace {

int fail(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::string fmt_sat(std::uint64_t v) {
    if (is_saturated(v)) return ">=" + std::to_string(kMaxLen);
    return std::to_string(v);
}

std::optional<Slp> load_slp(const std::string& path, std::string& err) {
    std::ifstream in(path);
    if (!in) {
        err = "cannot open " + path;
        return std::nullopt;
    }
    io::ParseResult res = io::parse_slp(in);
    if (!res.ok()) {
        err = path + ":" + std::to_string(res.line) + ": " + res.error;
        return std::nullopt;
    }
    return std::move(res.slp);
}

bool report_invalid(const Slp& slp, const std::string& what) {
    ValidationReport rep = validate(slp, slp.alphabet);
    for (const ValidationIssue& issue : rep.issues)
        std::cerr << what << ": rule " << issue.rule << ": " << issue.message << "\n";
    return !rep.ok();
}

std::optional<std::vector<Letter>> letters_of_raw(const std::string& s, std::string& err) {
    if (s.empty()) {
        err = "raw string must be nonempty";
        return std::nullopt;
    }
    std::vector<Letter> out;
    out.reserve(s.size());
    for (char c : s) {
        if (c < 'a' || c > 'z') {
            err = "raw strings are limited to lowercase a-z";
            return std::nullopt;
        }
        out.push_back(static_cast<Letter>(c - 'a'));
    }
    return out;
}

int write_slp(const Slp& slp, const std::string& out_path) {
    if (out_path.empty()) {
        io::serialize_slp(slp, std::cout);
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) return fail("cannot write " + out_path);
    io::serialize_slp(slp, out);
    return 0;
}

json phase_row(const fcpm::PhaseStats& s) {
    return json{{"phase", s.phase},
                {"pattern_letters", s.pattern_letters},
                {"text_letters", s.text_letters},
                {"grammar", s.grammar},
                {"alphabet", s.alphabet},
                {"fresh_letters", s.fresh_letters},
                {"pairs", s.pairs},
                {"pair_replacements", s.pair_replacements},
                {"blocks", s.blocks}};
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& path) {
    std::string err;
    std::optional<Slp> slp = load_slp(path, err);
    if (!slp) return fail(err);
    if (report_invalid(*slp, path)) return 2;
    SymbolTable symbols(slp->alphabet);
    SlpMeta meta = compute_meta(*slp, symbols);
    std::cout << "ok rules=" << rule_count(*slp) << " items=" << grammar_size(*slp)
              << " alphabet=" << slp->alphabet
              << " text_len=" << fmt_sat(meta.of(slp->text_axiom).weight)
              << " pattern_len=" << fmt_sat(meta.of(slp->pattern_axiom).weight) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// decompress

int cmd_decompress(const std::string& path, std::uint64_t limit, bool chars, bool pattern_side) {
    std::string err;
    std::optional<Slp> slp = load_slp(path, err);
    if (!slp) return fail(err);
    if (report_invalid(*slp, path)) return 2;
    RuleId axiom = pattern_side ? slp->pattern_axiom : slp->text_axiom;
    std::optional<std::vector<Letter>> value = eval_bounded(*slp, axiom, limit);
    if (!value) return fail("value exceeds --limit " + std::to_string(limit));
    if (chars) {
        std::string line;
        line.reserve(value->size());
        for (Letter l : *value) {
            if (l > 25) return fail("letter " + std::to_string(l) + " out of range for --chars");
            line.push_back(static_cast<char>('a' + l));
        }
        std::cout << line << "\n";
    } else {
        for (std::size_t i = 0; i < value->size(); ++i)
            std::cout << (i ? " " : "") << (*value)[i];
        std::cout << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// equal

int cmd_equal(const std::vector<std::string>& files, const std::string& a_raw,
              const std::string& b_raw) {
    Slp inst;
    std::string err;
    if (!a_raw.empty() || !b_raw.empty()) {
        if (!files.empty() || a_raw.empty() || b_raw.empty())
            return fail("give two files, one file, or both --a-raw and --b-raw");
        auto a = letters_of_raw(a_raw, err);
        if (!a) return fail(err);
        auto b = letters_of_raw(b_raw, err);
        if (!b) return fail(err);
        Letter alphabet = 0;
        for (Letter l : *a) alphabet = std::max<Letter>(alphabet, l + 1);
        for (Letter l : *b) alphabet = std::max<Letter>(alphabet, l + 1);
        inst = combine(from_text_balanced(*a, alphabet), from_text_balanced(*b, alphabet));
    } else if (files.size() == 1) {
        std::optional<Slp> slp = load_slp(files[0], err);
        if (!slp) return fail(err);
        inst = std::move(*slp);
    } else if (files.size() == 2) {
        std::optional<Slp> a = load_slp(files[0], err);
        if (!a) return fail(err);
        std::optional<Slp> b = load_slp(files[1], err);
        if (!b) return fail(err);
        inst = combine(std::move(*a), *b);
    } else {
        return fail("give two files, one file, or both --a-raw and --b-raw");
    }
    if (report_invalid(inst, "input")) return 2;
    bool eq = fcpm::equal_slp(std::move(inst));
    std::cout << (eq ? "equal" : "unequal") << "\n";
    return eq ? 0 : 1;
}

// ---------------------------------------------------------------------------
// match

struct MatchFlags {
    std::vector<std::string> files;
    std::string text_raw, pattern_raw;
    bool count = false, first = false, last = false;
    std::uint64_t positions = 0;
    bool positions_set = false;
    std::string strategy = "greedy";
    bool trace = false;
    bool explicit_mode = false;
    std::uint64_t limit = 1000000;
};

int cmd_match(const MatchFlags& f) {
    Slp inst;
    std::string err;
    if (!f.text_raw.empty() || !f.pattern_raw.empty()) {
        if (!f.files.empty() || f.text_raw.empty() || f.pattern_raw.empty())
            return fail("give two files, one file, or both --text-raw and --pattern-raw");
        auto t = letters_of_raw(f.text_raw, err);
        if (!t) return fail(err);
        auto p = letters_of_raw(f.pattern_raw, err);
        if (!p) return fail(err);
        Letter alphabet = 0;
        for (Letter l : *t) alphabet = std::max<Letter>(alphabet, l + 1);
        for (Letter l : *p) alphabet = std::max<Letter>(alphabet, l + 1);
        inst = combine(from_text_balanced(*t, alphabet), from_text_balanced(*p, alphabet));
    } else if (f.files.size() == 1) {
        std::optional<Slp> slp = load_slp(f.files[0], err);
        if (!slp) return fail(err);
        inst = std::move(*slp);
    } else if (f.files.size() == 2) {
        std::optional<Slp> t = load_slp(f.files[0], err);
        if (!t) return fail(err);
        std::optional<Slp> p = load_slp(f.files[1], err);
        if (!p) return fail(err);
        inst = combine(std::move(*t), *p);
    } else {
        return fail("give two files, one file, or both --text-raw and --pattern-raw");
    }
    if (report_invalid(inst, "input")) return 2;
    {
        SymbolTable symbols(inst.alphabet);
        SlpMeta meta = compute_meta(inst, symbols);
        if (meta.of(inst.pattern_axiom).empty) return fail("pattern derives the empty string");
        if (meta.of(inst.text_axiom).empty) return fail("text derives the empty string");
    }

    std::uint64_t count = 0, first = 0, last = 0;
    std::vector<std::uint64_t> positions;
    bool have_first = false, have_last = false;

    if (f.explicit_mode) {
        auto text = eval_bounded(inst, inst.text_axiom, f.limit);
        auto pattern = eval_bounded(inst, inst.pattern_axiom, f.limit);
        if (!text || !pattern)
            return fail("--explicit needs both values within --limit " + std::to_string(f.limit));
        explicit_algos::MatchAnswer ans =
            explicit_algos::spm_match(*text, *pattern, inst.alphabet);
        count = ans.count;
        have_first = have_last = ans.count > 0;
        first = ans.first;
        last = ans.last;
        if (f.positions_set) {
            std::size_t n = std::min<std::uint64_t>(f.positions, ans.positions.size());
            positions.assign(ans.positions.begin(), ans.positions.begin() + n);
        }
    } else {
        fcpm::Options opt;
        if (f.strategy == "binary")
            opt.strategy = fcpm::Strategy::binary;
        else if (f.strategy != "greedy")
            return fail("--strategy must be greedy or binary");
        std::vector<fcpm::PhaseStats> trace;
        if (f.trace) opt.trace = &trace;
        fcpm::OccurrenceSet occ = fcpm::fcpm(std::move(inst), opt);
        if (f.trace)
            for (const fcpm::PhaseStats& row : trace) std::cerr << phase_row(row).dump() << "\n";
        count = fcpm::count(occ);
        if (auto p = fcpm::position(occ, fcpm::Which::first)) {
            first = *p;
            have_first = true;
        }
        if (auto p = fcpm::position(occ, fcpm::Which::last)) {
            last = *p;
            have_last = true;
        }
        if (f.positions_set) positions = fcpm::enumerate(occ, f.positions);
    }

    if (is_saturated(count)) std::cerr << "note: count saturated at 2^63-1\n";
    bool all = !f.count && !f.first && !f.last && !f.positions_set;
    std::string line;
    auto add = [&line](const std::string& part) {
        if (!line.empty()) line += " ";
        line += part;
    };
    if (f.count || all) add("count=" + fmt_sat(count));
    if (f.first || all) add("first=" + (have_first ? fmt_sat(first) : std::string("none")));
    if (f.last || all) add("last=" + (have_last ? fmt_sat(last) : std::string("none")));
    if (!line.empty()) std::cout << line << "\n";
    if (f.positions_set) {
        for (std::size_t i = 0; i < positions.size(); ++i)
            std::cout << (i ? " " : "") << positions[i];
        std::cout << "\n";
    }
    return count > 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gen

struct GenFlags {
    std::string out;
    std::uint64_t k = 10;
    std::uint64_t letter = 0;
    std::uint64_t exp = 1024;
    std::uint64_t seed = 1;
    std::uint64_t rules = 64;
    std::uint64_t alphabet = 2;
    std::uint64_t max_len = 0;
    std::string text, pattern;
};

int cmd_gen(const std::string& kind, const GenFlags& g) {
    Slp slp;
    std::string err;
    if (kind == "fibonacci") {
        if (g.k < 1) return fail("--k must be at least 1");
        slp = gen_fibonacci(static_cast<unsigned>(g.k));
    } else if (kind == "thue-morse") {
        slp = gen_thue_morse(static_cast<unsigned>(g.k));
    } else if (kind == "power") {
        if (g.exp < 1) return fail("--exp must be at least 1");
        slp = gen_power(static_cast<Letter>(g.letter), g.exp);
    } else if (kind == "random") {
        if (g.alphabet < 1) return fail("--alphabet must be at least 1");
        if (g.max_len > 0)
            slp = gen_random_bounded(g.seed, static_cast<Letter>(g.alphabet), g.max_len,
                                     static_cast<std::uint32_t>(g.rules));
        else
            slp = gen_random(g.seed, static_cast<std::uint32_t>(g.rules),
                             static_cast<Letter>(g.alphabet));
    } else if (kind == "from-text") {
        auto t = letters_of_raw(g.text, err);
        if (!t) return fail(err);
        Letter alphabet = 0;
        for (Letter l : *t) alphabet = std::max<Letter>(alphabet, l + 1);
        if (g.pattern.empty()) {
            slp = from_text_balanced(*t, alphabet);
        } else {
            auto p = letters_of_raw(g.pattern, err);
            if (!p) return fail(err);
            for (Letter l : *p) alphabet = std::max<Letter>(alphabet, l + 1);
            slp = combine(from_text_balanced(*t, alphabet), from_text_balanced(*p, alphabet));
        }
    } else {
        return fail("unknown generator " + kind);
    }
    return write_slp(slp, g.out);
}

// ---------------------------------------------------------------------------
// bench

struct BenchInstance {
    std::string family;
    std::uint64_t id = 0;
    Slp slp;
};

int cmd_bench(const std::string& spec_path, const std::string& out_path) {
    std::ifstream in(spec_path);
    if (!in) return fail("cannot open " + spec_path);
    json spec;
    try {
        in >> spec;
    } catch (const json::exception& e) {
        return fail(std::string("bad bench spec: ") + e.what());
    }

    std::string strategy = spec.value("strategy", "greedy");
    if (strategy != "greedy" && strategy != "binary")
        return fail("strategy must be greedy or binary");
    const std::uint64_t oracle_budget = spec.value("oracle_budget", std::uint64_t{100000});
    const std::uint64_t positions_cap = spec.value("positions_cap", std::uint64_t{10000});
    if (!spec.contains("families") || !spec["families"].is_array())
        return fail("bench spec needs a families array");

    std::vector<BenchInstance> instances;
    for (const json& fam : spec["families"]) {
        std::string name = fam.value("name", "");
        if (name == "fibonacci" || name == "thue-morse") {
            std::uint64_t from = fam.value("from", std::uint64_t{4});
            std::uint64_t to = fam.value("to", std::uint64_t{4});
            if (from < 4 || to < from) return fail(name + ": need 4 <= from <= to");
            for (std::uint64_t k = from; k <= to; ++k) {
                unsigned kk = static_cast<unsigned>(k);
                Slp text = name == "fibonacci" ? gen_fibonacci(kk) : gen_thue_morse(kk);
                Slp pat =
                    name == "fibonacci" ? gen_fibonacci(kk - 2) : gen_thue_morse(kk - 2);
                instances.push_back({name, k, combine(std::move(text), pat)});
            }
        } else if (name == "power") {
            std::uint64_t from = fam.value("from", std::uint64_t{4});
            std::uint64_t to = fam.value("to", std::uint64_t{4});
            if (from < 2 || to < from || to > 62) return fail("power: need 2 <= from <= to <= 62");
            for (std::uint64_t k = from; k <= to; ++k) {
                Slp text = gen_power(0, std::uint64_t{1} << k);
                Slp pat = gen_power(0, std::uint64_t{1} << (k / 2));
                instances.push_back({name, k, combine(std::move(text), pat)});
            }
        } else if (name == "random") {
            if (!fam.contains("seeds") || !fam["seeds"].is_array())
                return fail("random: need a seeds array");
            Letter alphabet = static_cast<Letter>(fam.value("alphabet", std::uint64_t{3}));
            std::uint64_t rules = fam.value("rules", std::uint64_t{64});
            std::uint64_t max_len = fam.value("max_len", std::uint64_t{2000});
            std::uint64_t prules = fam.value("pattern_rules", std::uint64_t{24});
            std::uint64_t pmax = fam.value("pattern_max_len", std::uint64_t{24});
            if (alphabet < 1) return fail("random: alphabet must be at least 1");
            for (const json& s : fam["seeds"]) {
                std::uint64_t seed = s.get<std::uint64_t>();
                Slp text = gen_random_bounded(seed, alphabet, max_len,
                                              static_cast<std::uint32_t>(rules));
                Slp pat = gen_random_bounded(seed * UINT64_C(0x9e3779b97f4a7c15) + 1, alphabet,
                                             pmax, static_cast<std::uint32_t>(prules));
                instances.push_back({name, seed, combine(std::move(text), pat)});
            }
        } else {
            return fail("unknown family '" + name + "'");
        }
    }

    std::ofstream out_file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        out_file.open(out_path);
        if (!out_file) return fail("cannot write " + out_path);
        out = &out_file;
    }

    bool any_fail = false;
    for (const BenchInstance& bi : instances) {
        SymbolTable symbols(bi.slp.alphabet);
        SlpMeta meta = compute_meta(bi.slp, symbols);
        json row;
        row["family"] = bi.family;
        row["id"] = bi.id;
        row["rules"] = rule_count(bi.slp);
        row["items"] = grammar_size(bi.slp);
        row["alphabet"] = bi.slp.alphabet;
        row["text_len"] = meta.of(bi.slp.text_axiom).weight;
        row["pattern_len"] = meta.of(bi.slp.pattern_axiom).weight;
        row["strategy"] = strategy;

        fcpm::Options opt;
        opt.strategy =
            strategy == "binary" ? fcpm::Strategy::binary : fcpm::Strategy::greedy;
        std::vector<fcpm::PhaseStats> trace;
        blocklen::SortCounters counters;
        opt.trace = &trace;
        opt.sort_counters = &counters;

        auto t0 = std::chrono::steady_clock::now();
        fcpm::OccurrenceSet occ = fcpm::fcpm(bi.slp, opt);
        std::uint64_t count = fcpm::count(occ);
        auto first = fcpm::position(occ, fcpm::Which::first);
        auto last = fcpm::position(occ, fcpm::Which::last);
        auto t1 = std::chrono::steady_clock::now();

        row["wall_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        row["phases"] = trace.size();
        std::size_t max_grammar = grammar_size(bi.slp);
        std::size_t max_alphabet = bi.slp.alphabet;
        std::size_t fresh = 0;
        for (const fcpm::PhaseStats& s : trace) {
            max_grammar = std::max(max_grammar, s.grammar);
            max_alphabet = std::max(max_alphabet, s.alphabet);
            fresh += s.fresh_letters;
        }
        row["max_grammar"] = max_grammar;
        row["max_alphabet"] = max_alphabet;
        row["fresh_letters"] = fresh;
        row["count"] = count;
        row["saturated"] = is_saturated(count);
        row["first"] = first.value_or(0);
        row["last"] = last.value_or(0);
        row["blocklen"] = json{{"commons", counters.commons},
                               {"offsets", counters.offsets},
                               {"max_offset", counters.max_offset},
                               {"redirected_cost_bits", counters.redirected_cost_bits}};

        std::string oracle_verdict = "skipped";
        if (oracle_budget > 0 && meta.of(bi.slp.text_axiom).weight <= oracle_budget &&
            meta.of(bi.slp.pattern_axiom).weight <= oracle_budget) {
            auto expect = oracle::oracle_fcpm(bi.slp, oracle_budget);
            if (expect) {
                bool pass = expect->count == count && expect->first == first.value_or(0) &&
                            expect->last == last.value_or(0);
                if (pass && count > 0 && count <= positions_cap)
                    pass = fcpm::enumerate(occ, count) == expect->positions;
                oracle_verdict = pass ? "pass" : "fail";
                any_fail = any_fail || !pass;
            }
        }
        row["oracle"] = oracle_verdict;
        (*out) << row.dump() << "\n";
    }
    return any_fail ? 2 : 0;
}

// ---------------------------------------------------------------------------
// scan-pairs / pop / phase (debug dumps)

int cmd_scan_pairs(const std::string& path) {
    std::string err;
    std::optional<Slp> slp = load_slp(path, err);
    if (!slp) return fail(err);
    if (report_invalid(*slp, path)) return 2;
    SymbolTable symbols(slp->alphabet);
    recompress::PairScan scan = recompress::scan_pairs(*slp, symbols);
    for (const recompress::PairGroup& g : scan.groups)
        std::cout << "pair a=" << g.a << " b=" << g.b << " appearances=" << g.rule_appearances
                  << " explicit=" << g.occs.size() << " crossing=" << (g.crossing ? 1 : 0)
                  << "\n";
    for (Letter a : scan.crossing_block_letters) std::cout << "block-letter " << a << "\n";
    return 0;
}

int cmd_pop(const std::string& path, const std::vector<std::uint64_t>& left,
            const std::vector<std::uint64_t>& right, const std::string& out_path) {
    std::string err;
    std::optional<Slp> slp = load_slp(path, err);
    if (!slp) return fail(err);
    if (report_invalid(*slp, path)) return 2;
    normalize_axioms(*slp);
    SymbolTable symbols(slp->alphabet);
    recompress::Partition part(symbols.size());
    for (std::uint64_t a : left) {
        if (a >= symbols.size()) return fail("letter " + std::to_string(a) + " out of range");
        part.left[a] = 1;
    }
    for (std::uint64_t a : right) {
        if (a >= symbols.size()) return fail("letter " + std::to_string(a) + " out of range");
        if (part.left[a]) return fail("letter " + std::to_string(a) + " on both sides");
        part.right[a] = 1;
    }
    recompress::pop(*slp, part);
    if (report_invalid(*slp, "after pop")) return 2;
    return write_slp(*slp, out_path);
}

struct PhaseFlags {
    std::uint64_t phases = 1;
    std::string mode = "fcpm";
    std::string strategy = "greedy";
    bool trace = false;
    std::string out;
};

int cmd_phase(const std::string& path, const PhaseFlags& f) {
    std::string err;
    std::optional<Slp> slp = load_slp(path, err);
    if (!slp) return fail(err);
    if (report_invalid(*slp, path)) return 2;
    if (f.mode != "fcpm" && f.mode != "et") return fail("--mode must be fcpm or et");
    fcpm::Strategy strategy =
        f.strategy == "binary" ? fcpm::Strategy::binary : fcpm::Strategy::greedy;
    if (f.strategy != "greedy" && f.strategy != "binary")
        return fail("--strategy must be greedy or binary");

    normalize_axioms(*slp);
    SymbolTable symbols(slp->alphabet);
    std::uint64_t stripped_prefix = 0, stripped_suffix = 0;

    for (std::uint64_t i = 0; i < f.phases; ++i) {
        SlpMeta meta = compute_meta(*slp, symbols);
        const Letter wm = static_cast<Letter>(symbols.size());
        fcpm::PhaseOutcome po;
        if (f.mode == "fcpm") {
            if (meta.of(slp->pattern_axiom).letters <= 1) {
                std::cerr << "note: pattern is a single letter, stopping\n";
                break;
            }
            endfix::EndFixPlan plan = endfix::plan_endfix(*slp, symbols);
            if (plan.mode == endfix::Mode::pattern_is_power) {
                std::cerr << "note: pattern is a power, stopping\n";
                break;
            }
            endfix::FixStats fs = endfix::fix_ends_slp(*slp, symbols, plan);
            stripped_prefix = sat_add(stripped_prefix, fs.stripped_prefix);
            stripped_suffix = sat_add(stripped_suffix, fs.stripped_suffix);
                po = fcpm::run_phase(*slp, symbols, wm, true, strategy);
        } else {
            if (meta.of(slp->text_axiom).letters <= 1 ||
                meta.of(slp->pattern_axiom).letters <= 1) {
                std::cerr << "note: a side is a single letter, stopping\n";
                break;
            }
            po = fcpm::run_phase(*slp, symbols, wm, false, strategy);
        }
        const std::size_t minted_total = symbols.size();
        fcpm::phase_hygiene(*slp, symbols);
        if (f.trace) {
            SlpMeta after = compute_meta(*slp, symbols);
            fcpm::PhaseStats row;
            row.phase = i + 1;
            row.pattern_letters = after.of(slp->pattern_axiom).letters;
            row.text_letters = after.of(slp->text_axiom).letters;
            row.grammar = grammar_size(*slp);
            row.alphabet = symbols.size();
            row.fresh_letters = minted_total - wm;
            row.pairs = po.pairs;
            row.pair_replacements = po.pair_replacements;
            row.blocks = po.blocks;
            std::cerr << phase_row(row).dump() << "\n";
        }
    }

    std::ostringstream body;
    io::serialize_slp(*slp, body);
    if (f.mode == "fcpm")
        body << "# stripped prefix=" << stripped_prefix << " suffix=" << stripped_suffix << "\n";
    for (Letter a = 0; a < symbols.size(); ++a)
        body << "# weight " << a << " " << symbols.weight(a) << "\n";
    if (f.out.empty()) {
        std::cout << body.str();
        return 0;
    }
    std::ofstream out(f.out);
    if (!out) return fail("cannot write " + f.out);
    out << body.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pattern matching and equality on SLP-compressed strings by recompression"};
    app.require_subcommand(1);

    std::string v_path;
    CLI::App* v = app.add_subcommand("validate", "check an SLP file and print its shape");
    v->add_option("file", v_path, "SLP file")->required();

    std::string d_path;
    std::uint64_t d_limit = 1000000;
    bool d_chars = false, d_pattern = false;
    CLI::App* d = app.add_subcommand("decompress", "print a value, refusing beyond --limit");
    d->add_option("file", d_path, "SLP file")->required();
    d->add_option("--limit", d_limit, "maximum value length (default 1000000)");
    d->add_flag("--chars", d_chars, "print letters as a..z");
    d->add_flag("--pattern", d_pattern, "decompress the pattern axiom instead of the text");

    std::vector<std::string> e_files;
    std::string e_a_raw, e_b_raw;
    CLI::App* e = app.add_subcommand("equal", "equality of two values (exit 0 equal, 1 not)");
    e->add_option("files", e_files, "one instance file, or two value files")->expected(0, 2);
    e->add_option("--a-raw", e_a_raw, "first value as a lowercase string");
    e->add_option("--b-raw", e_b_raw, "second value as a lowercase string");

    MatchFlags m;
    CLI::App* mc = app.add_subcommand("match", "find pattern occurrences (exit 0 found, 1 none)");
    mc->add_option("files", m.files, "one instance file, or text file + pattern file")
        ->expected(0, 2);
    mc->add_option("--text-raw", m.text_raw, "text as a lowercase string");
    mc->add_option("--pattern-raw", m.pattern_raw, "pattern as a lowercase string");
    mc->add_flag("--count", m.count, "print the occurrence count");
    mc->add_flag("--first", m.first, "print the first occurrence position");
    mc->add_flag("--last", m.last, "print the last occurrence position");
    CLI::Option* mpos =
        mc->add_option("--positions", m.positions, "print up to N positions, ascending");
    mc->add_option("--strategy", m.strategy, "crossing-pair schedule: greedy or binary");
    mc->add_flag("--trace", m.trace, "JSON line per phase on stderr");
    mc->add_flag("--explicit", m.explicit_mode,
                 "decompress (within --limit) and run the explicit-word matcher");
    mc->add_option("--limit", m.limit, "decompression budget for --explicit");

    std::string g_kind;
    GenFlags g;
    CLI::App* gc = app.add_subcommand("gen", "generate an SLP instance");
    gc->add_option("kind", g_kind, "fibonacci | thue-morse | power | random | from-text")
        ->required();
    gc->add_option("-o,--out", g.out, "output file (default stdout)");
    gc->add_option("--k", g.k, "index for fibonacci / thue-morse");
    gc->add_option("--letter", g.letter, "letter id for power");
    gc->add_option("--exp", g.exp, "exponent for power");
    gc->add_option("--seed", g.seed, "seed for random");
    gc->add_option("--rules", g.rules, "rule count for random");
    gc->add_option("--alphabet", g.alphabet, "alphabet size for random");
    gc->add_option("--max-len", g.max_len, "value-length bound for random (0 = unbounded)");
    gc->add_option("--text", g.text, "text string for from-text");
    gc->add_option("--pattern", g.pattern, "optional pattern string for from-text");

    std::string b_spec, b_out;
    CLI::App* bc = app.add_subcommand("bench", "run a JSON bench spec, one JSON line per instance");
    bc->add_option("spec", b_spec, "bench spec (JSON)")->required();
    bc->add_option("--out", b_out, "output file (default stdout)");

    std::string sp_path;
    CLI::App* sp = app.add_subcommand("scan-pairs", "dump the adjacency scan of an SLP");
    sp->add_option("file", sp_path, "SLP file")->required();

    std::string pp_path, pp_out;
    std::vector<std::uint64_t> pp_left, pp_right;
    CLI::App* pp = app.add_subcommand("pop", "pop boundary letters for a partition");
    pp->add_option("file", pp_path, "SLP file")->required();
    pp->add_option("--left", pp_left, "left-class letters (popped off rule tails)");
    pp->add_option("--right", pp_right, "right-class letters (popped off rule heads)");
    pp->add_option("-o,--out", pp_out, "output file (default stdout)");

    std::string ph_path;
    PhaseFlags ph;
    CLI::App* phc = app.add_subcommand("phase", "run engine phases and dump the state");
    phc->add_option("file", ph_path, "SLP file")->required();
    phc->add_option("--phases", ph.phases, "number of phases (default 1)");
    phc->add_option("--mode", ph.mode, "fcpm (with end fixing) or et (equality schedule)");
    phc->add_option("--strategy", ph.strategy, "crossing-pair schedule: greedy or binary");
    phc->add_flag("--trace", ph.trace, "JSON line per phase on stderr");
    phc->add_option("-o,--out", ph.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return 2;
    }
    m.positions_set = mpos->count() > 0;

    try {
        if (v->parsed()) return cmd_validate(v_path);
        if (d->parsed()) return cmd_decompress(d_path, d_limit, d_chars, d_pattern);
        if (e->parsed()) return cmd_equal(e_files, e_a_raw, e_b_raw);
        if (mc->parsed()) return cmd_match(m);
        if (gc->parsed()) return cmd_gen(g_kind, g);
        if (bc->parsed()) return cmd_bench(b_spec, b_out);
        if (sp->parsed()) return cmd_scan_pairs(sp_path);
        if (pp->parsed()) return cmd_pop(pp_path, pp_left, pp_right, pp_out);
        if (phc->parsed()) return cmd_phase(ph_path, ph);
    } catch (const std::exception& ex) {
        return fail(ex.what());
    }
    return 2;
}
