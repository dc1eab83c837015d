#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "recomp/slp.hpp"

namespace recomp::io {

struct ParseResult {
    std::optional<Slp> slp;
    std::string error;
    std::size_t line = 0;
    bool ok() const { return slp.has_value(); }
};

namespace detail {

inline std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
               line[j] != '#')
            ++j;
        out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace detail

/// Parse the line-based interchange form:
///
///   slp v1
///   alphabet <k>
///   rules <r>
///   rule <id> := (t:<int> | n:<id> | run:<int>^<int>)*
///   text <axiom-id>
///   pattern <axiom-id>
///
/// '#' starts a comment, blank lines are skipped, extra whitespace is
/// accepted. Rule ids must be 0..r-1 in order. The pattern line may be
/// omitted; it then defaults to the text axiom. Grammar-level constraints
/// (reference ordering and so on) are validate()'s job, not the parser's.
inline ParseResult parse_slp(std::istream& in) {
    ParseResult res;
    auto fail = [&res](std::size_t line, std::string msg) {
        res.error = std::move(msg);
        res.line = line;
        res.slp.reset();
        return res;
    };

    Slp slp;
    std::uint64_t declared_rules = 0;
    std::uint64_t next_rule = 0;
    bool saw_header = false, saw_alphabet = false, saw_rules = false, saw_text = false,
         saw_pattern = false;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = detail::tokenize(raw);
        if (tok.empty()) continue;
        if (!saw_header) {
            if (tok.size() != 2 || tok[0] != "slp" || tok[1] != "v1")
                return fail(lineno, "expected header 'slp v1'");
            saw_header = true;
            continue;
        }
        if (tok[0] == "alphabet") {
            std::uint64_t k = 0;
            if (saw_alphabet || tok.size() != 2 || !detail::parse_u64(tok[1], k))
                return fail(lineno, "bad alphabet line");
            slp.alphabet = static_cast<Letter>(k);
            saw_alphabet = true;
        } else if (tok[0] == "rules") {
            if (saw_rules || tok.size() != 2 || !detail::parse_u64(tok[1], declared_rules))
                return fail(lineno, "bad rules line");
            saw_rules = true;
        } else if (tok[0] == "rule") {
            std::uint64_t id = 0;
            if (!saw_rules || tok.size() < 3 || !detail::parse_u64(tok[1], id) || tok[2] != ":=")
                return fail(lineno, "bad rule line");
            if (id != next_rule)
                return fail(lineno, "rule id " + std::string(tok[1]) + " out of order");
            if (id >= declared_rules) return fail(lineno, "more rules than declared");
            Body body;
            for (std::size_t t = 3; t < tok.size(); ++t) {
                std::string_view s = tok[t];
                std::uint64_t v = 0;
                if (s.starts_with("t:")) {
                    if (!detail::parse_u64(s.substr(2), v))
                        return fail(lineno, "bad terminal item");
                    body.push_back(Item::make_letter(static_cast<Letter>(v)));
                } else if (s.starts_with("n:")) {
                    if (!detail::parse_u64(s.substr(2), v))
                        return fail(lineno, "bad reference item");
                    body.push_back(Item::make_ref(static_cast<RuleId>(v)));
                } else if (s.starts_with("run:")) {
                    std::string_view rest = s.substr(4);
                    std::size_t caret = rest.find('^');
                    std::uint64_t e = 0;
                    if (caret == std::string_view::npos ||
                        !detail::parse_u64(rest.substr(0, caret), v) ||
                        !detail::parse_u64(rest.substr(caret + 1), e) || e == 0)
                        return fail(lineno, "bad run item");
                    body.push_back(Item::make_run(static_cast<Letter>(v), e));
                } else {
                    return fail(lineno, "unknown item '" + std::string(s) + "'");
                }
            }
            slp.add_rule(std::move(body));
            ++next_rule;
        } else if (tok[0] == "text") {
            std::uint64_t id = 0;
            if (saw_text || tok.size() != 2 || !detail::parse_u64(tok[1], id))
                return fail(lineno, "bad text line");
            slp.text_axiom = static_cast<RuleId>(id);
            saw_text = true;
        } else if (tok[0] == "pattern") {
            std::uint64_t id = 0;
            if (saw_pattern || tok.size() != 2 || !detail::parse_u64(tok[1], id))
                return fail(lineno, "bad pattern line");
            slp.pattern_axiom = static_cast<RuleId>(id);
            saw_pattern = true;
        } else {
            return fail(lineno, "unknown directive '" + std::string(tok[0]) + "'");
        }
    }
    if (!saw_header) return fail(lineno, "missing header 'slp v1'");
    if (!saw_alphabet) return fail(lineno, "missing alphabet line");
    if (!saw_rules) return fail(lineno, "missing rules line");
    if (next_rule != declared_rules) return fail(lineno, "fewer rules than declared");
    if (!saw_text) return fail(lineno, "missing text line");
    if (!saw_pattern) slp.pattern_axiom = slp.text_axiom;
    if (slp.text_axiom >= slp.rules.size()) return fail(lineno, "text axiom out of range");
    if (slp.pattern_axiom >= slp.rules.size()) return fail(lineno, "pattern axiom out of range");
    res.slp = std::move(slp);
    return res;
}

inline ParseResult parse_slp(const std::string& content) {
    std::istringstream in(content);
    return parse_slp(in);
}

/// Canonical form: single spaces, rules compacted to 0..r-1 keeping relative
/// order (so reference ordering survives), text line before pattern line.
/// Dead rules are dropped.
inline void serialize_slp(const Slp& slp, std::ostream& out) {
    std::vector<RuleId> new_id(slp.rules.size(), 0);
    RuleId next = 0;
    for (RuleId r = 0; r < slp.rules.size(); ++r)
        if (slp.rules[r].alive) new_id[r] = next++;
    out << "slp v1\n";
    out << "alphabet " << slp.alphabet << "\n";
    out << "rules " << next << "\n";
    for (RuleId r = 0; r < slp.rules.size(); ++r) {
        if (!slp.rules[r].alive) continue;
        out << "rule " << new_id[r] << " :=";
        for (const Item& it : slp.rules[r].body) {
            if (it.is_letter())
                out << " t:" << it.letter;
            else if (it.is_ref())
                out << " n:" << new_id[it.ref];
            else if (it.is_run())
                out << " run:" << it.letter << "^" << it.exp;
        }
        out << "\n";
    }
    out << "text " << new_id[slp.text_axiom] << "\n";
    out << "pattern " << new_id[slp.pattern_axiom] << "\n";
}

inline std::string serialize_slp(const Slp& slp) {
    std::ostringstream out;
    serialize_slp(slp, out);
    return out.str();
}

}  // namespace recomp::io
