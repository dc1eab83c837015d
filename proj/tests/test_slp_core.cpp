#include <catch2/catch_amalgamated.hpp>

#include "recomp/generators.hpp"
#include "recomp/slp.hpp"
#include "recomp/slp_io.hpp"
#include "recomp/symbols.hpp"
#include "support.hpp"

using namespace recomp;
using recomp::test::letters_of;
using recomp::test::string_of;

namespace {

std::string eval_str(const Slp& slp, RuleId root, std::uint64_t budget = 1u << 20) {
    auto v = eval_bounded(slp, root, budget);
    REQUIRE(v.has_value());
    return string_of(*v);
}

}  // namespace

TEST_CASE("fibonacci grammar values", "[slp_core]") {
    CHECK(eval_str(gen_fibonacci(1), gen_fibonacci(1).text_axiom) == "b");
    CHECK(eval_str(gen_fibonacci(2), gen_fibonacci(2).text_axiom) == "a");
    Slp f5 = gen_fibonacci(5);
    CHECK(eval_str(f5, f5.text_axiom) == "abaab");
    Slp f7 = gen_fibonacci(7);
    CHECK(eval_str(f7, f7.text_axiom) == "abaababaabaab");
    CHECK(validate(f7).ok());

    SymbolTable syms(2);
    SlpMeta meta = compute_meta(f7, syms);
    CHECK(meta.of(f7.text_axiom).letters == 13);
    CHECK(meta.of(f7.text_axiom).weight == 13);
    CHECK(meta.of(f7.text_axiom).first == 0);
    CHECK(meta.of(f7.text_axiom).last == 1);
}

TEST_CASE("thue-morse grammar value", "[slp_core]") {
    Slp tm = gen_thue_morse(4);
    CHECK(eval_str(tm, tm.text_axiom) == "abbabaabbaababba");
    CHECK(validate(tm).ok());
}

TEST_CASE("power grammar", "[slp_core]") {
    Slp one = gen_power(3, 1);
    SymbolTable syms(4);
    CHECK(compute_meta(one, syms).of(one.text_axiom).letters == 1);
    CHECK(validate(one).ok());

    Slp p13 = gen_power(0, 13);
    SymbolTable s1(1);
    CHECK(compute_meta(p13, s1).of(p13.text_axiom).letters == 13);
    auto v = eval_bounded(p13, p13.text_axiom, 100);
    REQUIRE(v.has_value());
    CHECK(v->size() == 13);
    for (Letter l : *v) CHECK(l == 0);

    // Astronomically long value: meta is exact, decompression refuses.
    Slp huge = gen_power(0, UINT64_C(1) << 40);
    CHECK(compute_meta(huge, s1).of(huge.text_axiom).letters == UINT64_C(1) << 40);
    CHECK(!eval_bounded(huge, huge.text_axiom, 1000).has_value());
    CHECK(validate(huge).ok());
}

TEST_CASE("meta saturates instead of overflowing", "[slp_core]") {
    // 70 doublings of a single letter: 2^70 > 2^63 - 1.
    Slp slp;
    slp.alphabet = 1;
    RuleId r = slp.add_rule(Body{Item::make_letter(0)});
    for (int i = 0; i < 70; ++i) r = slp.add_rule(Body{Item::make_ref(r), Item::make_ref(r)});
    slp.text_axiom = slp.pattern_axiom = r;
    SymbolTable syms(1);
    SlpMeta meta = compute_meta(slp, syms);
    CHECK(meta.of(r).letters == kMaxLen);
    CHECK(meta.of(r).weight == kMaxLen);
    CHECK(is_saturated(meta.of(r).letters));
}

TEST_CASE("saturating arithmetic", "[slp_core]") {
    CHECK(sat_add(kMaxLen, 1) == kMaxLen);
    CHECK(sat_add(kMaxLen - 1, 1) == kMaxLen);
    CHECK(sat_add(2, 3) == 5);
    CHECK(sat_mul(kMaxLen / 2, 3) == kMaxLen);
    CHECK(sat_mul(1u << 20, 1u << 20) == UINT64_C(1) << 40);
    CHECK(sat_mul(0, kMaxLen) == 0);
    CHECK(sat_sub(3, 5) == 0);
    CHECK(sat_sub(5, 3) == 2);
    CHECK(sat_sub(kMaxLen, 1) == kMaxLen);  // saturated stays saturated
}

TEST_CASE("from_text builders round-trip", "[slp_core]") {
    auto word = letters_of("mississippi");
    Slp bal = from_text_balanced(word, 26);
    CHECK(validate(bal).ok());
    CHECK(eval_str(bal, bal.text_axiom) == "mississippi");

    Slp rnd = from_text_random(word, 26, 42);
    CHECK(validate(rnd).ok());
    CHECK(eval_str(rnd, rnd.text_axiom) == "mississippi");

    // Same seed, same grammar; different seed, same value.
    Slp rnd2 = from_text_random(word, 26, 42);
    CHECK(io::serialize_slp(rnd) == io::serialize_slp(rnd2));
    Slp rnd3 = from_text_random(word, 26, 43);
    CHECK(eval_str(rnd3, rnd3.text_axiom) == "mississippi");
}

TEST_CASE("random generators are deterministic", "[slp_core]") {
    Slp a = gen_random(7, 40, 3);
    Slp b = gen_random(7, 40, 3);
    CHECK(io::serialize_slp(a) == io::serialize_slp(b));
    CHECK(validate(a).ok());

    Slp c = gen_random_bounded(11, 3, 500, 60);
    CHECK(validate(c).ok());
    SymbolTable syms(3);
    CHECK(compute_meta(c, syms).of(c.text_axiom).letters <= 500);
}

TEST_CASE("validate flags structural defects", "[slp_core]") {
    SECTION("forward reference") {
        Slp slp;
        slp.alphabet = 1;
        slp.add_rule(Body{Item::make_ref(1)});
        slp.add_rule(Body{Item::make_letter(0)});
        slp.text_axiom = slp.pattern_axiom = 0;
        auto rep = validate(slp);
        REQUIRE(!rep.ok());
        CHECK(rep.issues[0].message.find("not lower") != std::string::npos);
    }
    SECTION("self reference") {
        Slp slp;
        slp.alphabet = 1;
        slp.add_rule(Body{Item::make_letter(0), Item::make_ref(0)});
        slp.text_axiom = slp.pattern_axiom = 0;
        CHECK(!validate(slp).ok());
    }
    SECTION("letter out of range") {
        Slp slp;
        slp.alphabet = 2;
        slp.add_rule(Body{Item::make_letter(5)});
        slp.text_axiom = slp.pattern_axiom = 0;
        CHECK(!validate(slp).ok());
    }
    SECTION("run exponent below 2") {
        Slp slp;
        slp.alphabet = 1;
        Item bad = Item::make_run(0, 2);
        bad.exp = 1;  // bypass the factory's normalisation
        slp.add_rule(Body{bad});
        slp.text_axiom = slp.pattern_axiom = 0;
        CHECK(!validate(slp).ok());
    }
    SECTION("more than two references") {
        Slp slp;
        slp.alphabet = 1;
        slp.add_rule(Body{Item::make_letter(0)});
        slp.add_rule(Body{Item::make_ref(0), Item::make_ref(0), Item::make_ref(0)});
        slp.text_axiom = slp.pattern_axiom = 1;
        auto rep = validate(slp);
        REQUIRE(!rep.ok());
        CHECK(rep.issues[0].message.find("more than two") != std::string::npos);
    }
    SECTION("reference to empty-valued rule") {
        Slp slp;
        slp.alphabet = 1;
        slp.add_rule(Body{});  // empty value
        slp.add_rule(Body{Item::make_letter(0), Item::make_ref(0)});
        slp.text_axiom = slp.pattern_axiom = 1;
        CHECK(!validate(slp).ok());
    }
    SECTION("pattern axiom referenced by a body") {
        Slp slp;
        slp.alphabet = 1;
        slp.add_rule(Body{Item::make_letter(0)});
        slp.add_rule(Body{Item::make_ref(0), Item::make_ref(0)});
        slp.text_axiom = 1;
        slp.pattern_axiom = 0;
        auto rep = validate(slp);
        REQUIRE(!rep.ok());
        CHECK(rep.issues[0].message.find("pattern axiom referenced") != std::string::npos);
    }
    SECTION("shared axioms are accepted") {
        Slp slp = gen_fibonacci(5);
        CHECK(validate(slp).ok());
    }
}

TEST_CASE("normalize_axioms isolates axioms", "[slp_core]") {
    SECTION("shared axiom gets split") {
        Slp slp = gen_fibonacci(6);
        REQUIRE(slp.text_axiom == slp.pattern_axiom);
        std::string before = eval_str(slp, slp.text_axiom);
        normalize_axioms(slp);
        CHECK(slp.text_axiom != slp.pattern_axiom);
        CHECK(validate(slp).ok());
        CHECK(eval_str(slp, slp.text_axiom) == before);
        CHECK(eval_str(slp, slp.pattern_axiom) == before);
    }
    SECTION("referenced axiom gets wrapped") {
        Slp slp;
        slp.alphabet = 2;
        RuleId a = slp.add_rule(Body{Item::make_letter(0)});
        RuleId pat = slp.add_rule(Body{Item::make_ref(a), Item::make_letter(1)});
        RuleId txt = slp.add_rule(Body{Item::make_ref(pat), Item::make_ref(pat)});
        slp.text_axiom = txt;
        slp.pattern_axiom = pat;
        REQUIRE(!validate(slp).ok());  // pattern axiom is referenced
        normalize_axioms(slp);
        CHECK(validate(slp).ok());
        CHECK(eval_str(slp, slp.pattern_axiom) == "ab");
        CHECK(eval_str(slp, slp.text_axiom) == "abab");
    }
}

TEST_CASE("gc_unreachable drops junk but keeps both cones", "[slp_core]") {
    Slp slp = recomp::test::make_instance("abab", "ba");
    RuleId junk = slp.add_rule(Body{Item::make_letter(0), Item::make_letter(0)});
    std::string t = eval_str(slp, slp.text_axiom);
    std::string p = eval_str(slp, slp.pattern_axiom);
    gc_unreachable(slp);
    CHECK(!slp.rules[junk].alive);
    CHECK(validate(slp).ok());
    CHECK(eval_str(slp, slp.text_axiom) == t);
    CHECK(eval_str(slp, slp.pattern_axiom) == p);
}

TEST_CASE("merge_adjacent_runs coalesces equal-letter neighbours", "[slp_core]") {
    Body body;
    body.push_back(Item::make_letter(0));
    body.push_back(Item::make_run(0, 3));
    body.push_back(Item::make_letter(1));
    body.push_back(Item::make_letter(1));
    body.push_back(Item::make_letter(0));
    merge_adjacent_runs(body);
    REQUIRE(body.size() == 3);
    auto it = body.begin();
    CHECK((it->is_run() && it->letter == 0 && it->exp == 4));
    ++it;
    CHECK((it->is_run() && it->letter == 1 && it->exp == 2));
    ++it;
    CHECK((it->is_letter() && it->letter == 0));
}

TEST_CASE("merge_adjacent_runs erases tombstones", "[slp_core]") {
    Body body;
    body.push_back(Item::make_letter(0));
    Item dead;
    dead.kind = Item::Kind::dead;
    body.push_back(dead);
    body.push_back(Item::make_letter(0));
    merge_adjacent_runs(body);
    // The tombstone goes away first, then the two a's merge.
    REQUIRE(body.size() == 1);
    CHECK((body.begin()->is_run() && body.begin()->exp == 2));
}

TEST_CASE("drop_empty_rules removes empty-valued rules and their uses", "[slp_core]") {
    Slp slp;
    slp.alphabet = 1;
    RuleId e = slp.add_rule(Body{});
    RuleId top = slp.add_rule(Body{Item::make_letter(0), Item::make_ref(e)});
    slp.text_axiom = slp.pattern_axiom = top;
    REQUIRE(!validate(slp).ok());
    drop_empty_rules(slp);
    CHECK(!slp.rules[e].alive);
    CHECK(validate(slp).ok());
    CHECK(eval_str(slp, top) == "a");
}

TEST_CASE("renumber_alphabet compacts sparse letters in order", "[slp_core]") {
    Slp slp;
    slp.alphabet = 901;
    slp.add_rule(Body{Item::make_letter(900), Item::make_letter(5), Item::make_run(17, 2)});
    slp.text_axiom = slp.pattern_axiom = 0;
    SymbolTable syms(901);
    auto old_to_new = renumber_alphabet(slp, syms);
    CHECK(old_to_new[5] == 0);
    CHECK(old_to_new[17] == 1);
    CHECK(old_to_new[900] == 2);
    CHECK(old_to_new[6] == kNoLetter);
    CHECK(syms.size() == 3);
    CHECK(slp.alphabet == 3);
    auto v = eval_bounded(slp, 0, 100);
    REQUIRE(v.has_value());
    CHECK(*v == std::vector<Letter>{2, 0, 1, 1});
    CHECK(validate(slp).ok());
}

TEST_CASE("renumber_alphabet is the identity on dense alphabets", "[slp_core]") {
    Slp slp = gen_fibonacci(6);
    SymbolTable syms(2);
    std::string before = eval_str(slp, slp.text_axiom);
    auto map = renumber_alphabet(slp, syms);
    CHECK(map[0] == 0);
    CHECK(map[1] == 1);
    CHECK(eval_str(slp, slp.text_axiom) == before);
}

TEST_CASE("symbol table weights survive fresh letters and remap", "[slp_core]") {
    SymbolTable syms(2);
    CHECK(syms.weight(0) == 1);
    Letter c = syms.fresh(7);
    CHECK(c == 2);
    CHECK(syms.weight(c) == 7);
    Letter d = syms.fresh(kMaxLen);
    CHECK(syms.weight(d) == kMaxLen);
    syms.remap({d, c});  // keep only d, c in that order
    CHECK(syms.size() == 2);
    CHECK(syms.weight(0) == kMaxLen);
    CHECK(syms.weight(1) == 7);
}
