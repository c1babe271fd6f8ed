#include "aspforge/ndproof.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace aspforge::ndproof {

using fol::Formula;
using fol::FormulaPtr;

// --------------------------------------------------------------------------
// Propositional formula parser (binary connectives).
// --------------------------------------------------------------------------

namespace {

struct FormulaParser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    }

    bool eat(std::string_view s) {
        skip_ws();
        if (text.substr(pos, s.size()) == s) {
            pos += s.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw Error("formula parse error at offset " + std::to_string(pos) + ": " + msg);
    }

    FormulaPtr parse() {
        FormulaPtr f = implication();
        skip_ws();
        if (pos != text.size()) {
            fail("trailing input '" + std::string(text.substr(pos)) + "'");
        }
        return f;
    }

    FormulaPtr implication() {
        FormulaPtr lhs = disjunction();
        if (eat("->")) {
            return fol::f_implies(lhs, implication());
        }
        return lhs;
    }

    FormulaPtr disjunction() {
        FormulaPtr lhs = conjunction();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '|') {
                ++pos;
                FormulaPtr rhs = conjunction();
                Formula f;
                f.kind = Formula::Kind::Or;
                f.parts = {lhs, rhs};
                lhs = std::make_shared<const Formula>(std::move(f));
            } else {
                break;
            }
        }
        return lhs;
    }

    FormulaPtr conjunction() {
        FormulaPtr lhs = unary();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '&') {
                ++pos;
                FormulaPtr rhs = unary();
                Formula f;
                f.kind = Formula::Kind::And;
                f.parts = {lhs, rhs};
                lhs = std::make_shared<const Formula>(std::move(f));
            } else {
                break;
            }
        }
        return lhs;
    }

    FormulaPtr unary() {
        skip_ws();
        if (pos >= text.size()) {
            fail("unexpected end of formula");
        }
        if (text[pos] == '~') {
            ++pos;
            return fol::f_not(unary());
        }
        if (text[pos] == '(') {
            ++pos;
            FormulaPtr f = implication();
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') {
                fail("expected ')'");
            }
            ++pos;
            return f;
        }
        if (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_') {
            std::string word;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
                word += text[pos++];
            }
            if (word == "bot") {
                return fol::f_bot();
            }
            if (word == "top") {
                return fol::f_top();
            }
            return fol::f_atom(Atom::predicate(word));
        }
        fail(std::string("unexpected character '") + text[pos] + "'");
    }
};

} // namespace

FormulaPtr parse_formula(std::string_view text) {
    FormulaParser p{text};
    return p.parse();
}

// --------------------------------------------------------------------------
// Proof scripts.
// --------------------------------------------------------------------------

namespace {

const std::set<std::string> kRuleNames = {"axiom", "andi", "ande1", "ande2", "ori1", "ori2",
                                          "ore",   "impi", "impe",  "negi",  "nege", "c",
                                          "w",     "demorgan"};

std::string trim(std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    return s.substr(a, b - a + 1);
}

bool is_number(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string> split_commas(const std::string& s) {
    // comma split respecting parentheses
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') {
            ++depth;
        }
        if (c == ')') {
            --depth;
        }
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) {
        out.push_back(trim(cur));
    }
    return out;
}

} // namespace

Proof parse_proof(std::string_view text) {
    Proof proof;
    std::map<std::string, FormulaPtr> abbrevs;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    std::set<int> labels;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t comment = line.find('%');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        size_t arrow = line.find("=>");
        size_t dot = line.find('.');
        size_t colon = line.find(':');
        if (arrow == std::string::npos) {
            // abbreviation line: Name: <formula>
            if (colon == std::string::npos) {
                throw Error("proof parse error at line " + std::to_string(lineno) +
                            ": expected '=>' or an abbreviation");
            }
            std::string name = trim(line.substr(0, colon));
            if (name.empty() || is_number(name)) {
                throw Error("proof parse error at line " + std::to_string(lineno) +
                            ": bad abbreviation name");
            }
            abbrevs[name] = parse_formula(line.substr(colon + 1));
            continue;
        }
        if (dot == std::string::npos || dot > arrow) {
            throw Error("proof parse error at line " + std::to_string(lineno) +
                        ": expected '<label>.'");
        }
        std::string label_text = trim(line.substr(0, dot));
        if (!is_number(label_text)) {
            throw Error("proof parse error at line " + std::to_string(lineno) +
                        ": bad line label '" + label_text + "'");
        }
        ProofLine pl;
        pl.label = std::stoi(label_text);
        if (!labels.insert(pl.label).second) {
            throw Error("proof parse error at line " + std::to_string(lineno) +
                        ": duplicate label " + label_text);
        }

        std::string assumptions_text = trim(line.substr(dot + 1, arrow - dot - 1));
        for (const std::string& part : split_commas(assumptions_text)) {
            auto it = abbrevs.find(part);
            FormulaPtr f = it != abbrevs.end() ? it->second : parse_formula(part);
            bool dup = std::any_of(pl.sequent.assumptions.begin(), pl.sequent.assumptions.end(),
                                   [&](const FormulaPtr& g) { return fol::equal(f, g); });
            if (!dup) {
                pl.sequent.assumptions.push_back(f);
            }
        }

        // split conclusion from justification: earliest token (from the
        // second position) that names a rule and is followed by numbers only
        std::string rhs = trim(line.substr(arrow + 2));
        std::istringstream toks(rhs);
        std::vector<std::string> tokens;
        std::string tok;
        while (toks >> tok) {
            tokens.push_back(tok);
        }
        size_t cut = tokens.size();
        for (size_t i = 1; i < tokens.size(); ++i) {
            if (!kRuleNames.count(tokens[i])) {
                continue;
            }
            bool rest_numbers = true;
            for (size_t j = i + 1; j < tokens.size(); ++j) {
                if (!is_number(tokens[j])) {
                    rest_numbers = false;
                    break;
                }
            }
            if (rest_numbers) {
                cut = i;
                break;
            }
        }
        if (cut == tokens.size()) {
            throw Error("proof parse error at line " + std::to_string(lineno) +
                        ": missing justification");
        }
        std::string conclusion_text;
        for (size_t i = 0; i < cut; ++i) {
            conclusion_text += tokens[i] + " ";
        }
        auto ab = abbrevs.find(trim(conclusion_text));
        pl.sequent.conclusion =
            ab != abbrevs.end() ? ab->second : parse_formula(conclusion_text);
        pl.justification.rule = tokens[cut];
        for (size_t i = cut + 1; i < tokens.size(); ++i) {
            pl.justification.premises.push_back(std::stoi(tokens[i]));
        }
        proof.lines.push_back(std::move(pl));
    }
    for (const ProofLine& pl : proof.lines) {
        for (int p : pl.justification.premises) {
            if (!labels.count(p)) {
                throw Error("proof parse error: line " + std::to_string(pl.label) +
                            " cites undefined premise " + std::to_string(p));
            }
        }
    }
    return proof;
}

// --------------------------------------------------------------------------
// Checking.
// --------------------------------------------------------------------------

namespace {

using Assumptions = std::vector<FormulaPtr>;

bool contains(const Assumptions& xs, const FormulaPtr& f) {
    return std::any_of(xs.begin(), xs.end(), [&](const FormulaPtr& g) { return fol::equal(f, g); });
}

Assumptions set_union(const Assumptions& a, const Assumptions& b) {
    Assumptions out = a;
    for (const FormulaPtr& f : b) {
        if (!contains(out, f)) {
            out.push_back(f);
        }
    }
    return out;
}

Assumptions set_minus(const Assumptions& a, const FormulaPtr& f) {
    Assumptions out;
    for (const FormulaPtr& g : a) {
        if (!fol::equal(f, g)) {
            out.push_back(g);
        }
    }
    return out;
}

bool set_equal(const Assumptions& a, const Assumptions& b) {
    if (a.size() != b.size()) {
        return false;
    }
    return std::all_of(a.begin(), a.end(), [&](const FormulaPtr& f) { return contains(b, f); });
}

bool is_wem(const FormulaPtr& f) {
    // ~F | ~~F
    if (f->kind != Formula::Kind::Or || f->parts.size() != 2) {
        return false;
    }
    const FormulaPtr& l = f->parts[0];
    const FormulaPtr& r = f->parts[1];
    return fol::is_not(*l) && fol::is_not(*r) && fol::equal(r->parts[0], l);
}

struct Demorgan {
    static bool matches(const FormulaPtr& from, const FormulaPtr& to) {
        // ~(F & G)  <->  ~F | ~G      and      ~(F | G)  <->  ~F & ~G
        auto negated_pair = [](const FormulaPtr& f, Formula::Kind inner)
            -> std::optional<std::pair<FormulaPtr, FormulaPtr>> {
            if (!fol::is_not(*f) || f->parts[0]->kind != inner || f->parts[0]->parts.size() != 2) {
                return std::nullopt;
            }
            return std::make_pair(f->parts[0]->parts[0], f->parts[0]->parts[1]);
        };
        auto split_pair = [](const FormulaPtr& f, Formula::Kind outer)
            -> std::optional<std::pair<FormulaPtr, FormulaPtr>> {
            if (f->kind != outer || f->parts.size() != 2 || !fol::is_not(*f->parts[0]) ||
                !fol::is_not(*f->parts[1])) {
                return std::nullopt;
            }
            return std::make_pair(f->parts[0]->parts[0], f->parts[1]->parts[0]);
        };
        auto same = [](const std::pair<FormulaPtr, FormulaPtr>& a,
                       const std::pair<FormulaPtr, FormulaPtr>& b) {
            return fol::equal(a.first, b.first) && fol::equal(a.second, b.second);
        };
        if (auto fg = negated_pair(from, Formula::Kind::And)) {
            if (auto split = split_pair(to, Formula::Kind::Or); split && same(*fg, *split)) {
                return true;
            }
        }
        if (auto split = split_pair(from, Formula::Kind::Or)) {
            if (auto fg = negated_pair(to, Formula::Kind::And); fg && same(*split, *fg)) {
                return true;
            }
        }
        if (auto fg = negated_pair(from, Formula::Kind::Or)) {
            if (auto split = split_pair(to, Formula::Kind::And); split && same(*fg, *split)) {
                return true;
            }
        }
        if (auto split = split_pair(from, Formula::Kind::And)) {
            if (auto fg = negated_pair(to, Formula::Kind::Or); fg && same(*split, *fg)) {
                return true;
            }
        }
        return false;
    }
};

} // namespace

CheckResult check_proof(const Proof& proof, const CheckOptions& options) {
    std::map<int, const ProofLine*> by_label;
    for (const ProofLine& pl : proof.lines) {
        by_label[pl.label] = &pl;
    }
    std::set<int> seen;
    for (const ProofLine& pl : proof.lines) {
        auto fail = [&](const std::string& reason) {
            return CheckResult{false, pl.label, reason};
        };
        std::vector<const Sequent*> prem;
        bool bad_premise = false;
        for (int p : pl.justification.premises) {
            if (!seen.count(p)) {
                bad_premise = true;
                break;
            }
            prem.push_back(&by_label.at(p)->sequent);
        }
        if (bad_premise) {
            return fail("premise does not precede the line");
        }
        seen.insert(pl.label);

        const std::string& rule = pl.justification.rule;
        const Sequent& s = pl.sequent;
        auto arity = [&](size_t n) { return prem.size() == n; };

        if (rule == "axiom") {
            bool ff = s.assumptions.size() == 1 && fol::equal(s.assumptions[0], s.conclusion);
            bool top = s.assumptions.empty() && fol::is_top(*s.conclusion);
            bool wem = s.assumptions.empty() && is_wem(s.conclusion);
            if (!(ff || top || wem) || !prem.empty()) {
                return fail("line does not match an axiom schema");
            }
            continue;
        }
        if (rule == "andi") {
            if (!arity(2)) {
                return fail("andi takes two premises");
            }
            if (s.conclusion->kind != Formula::Kind::And || s.conclusion->parts.size() != 2) {
                return fail("conclusion is not a binary conjunction");
            }
            auto try_order = [&](const Sequent* a, const Sequent* b) {
                return fol::equal(a->conclusion, s.conclusion->parts[0]) &&
                       fol::equal(b->conclusion, s.conclusion->parts[1]);
            };
            if (!try_order(prem[0], prem[1]) && !try_order(prem[1], prem[0])) {
                return fail("premises do not yield the conjuncts");
            }
            if (!set_equal(s.assumptions, set_union(prem[0]->assumptions, prem[1]->assumptions))) {
                return fail("assumption union mismatch");
            }
            continue;
        }
        if (rule == "ande1" || rule == "ande2") {
            if (!arity(1)) {
                return fail(rule + " takes one premise");
            }
            const FormulaPtr& c = prem[0]->conclusion;
            if (c->kind != Formula::Kind::And || c->parts.size() != 2) {
                return fail("premise is not a binary conjunction");
            }
            const FormulaPtr& want = rule == "ande1" ? c->parts[0] : c->parts[1];
            if (!fol::equal(s.conclusion, want) || !set_equal(s.assumptions, prem[0]->assumptions)) {
                return fail("conclusion or assumptions mismatch");
            }
            continue;
        }
        if (rule == "ori1" || rule == "ori2") {
            if (!arity(1)) {
                return fail(rule + " takes one premise");
            }
            if (s.conclusion->kind != Formula::Kind::Or || s.conclusion->parts.size() != 2) {
                return fail("conclusion is not a binary disjunction");
            }
            const FormulaPtr& want = rule == "ori1" ? s.conclusion->parts[0] : s.conclusion->parts[1];
            if (!fol::equal(prem[0]->conclusion, want) ||
                !set_equal(s.assumptions, prem[0]->assumptions)) {
                return fail("premise or assumptions mismatch");
            }
            continue;
        }
        if (rule == "ore") {
            if (!arity(3)) {
                return fail("ore takes three premises");
            }
            const FormulaPtr& major = prem[0]->conclusion;
            if (major->kind != Formula::Kind::Or || major->parts.size() != 2) {
                return fail("major premise is not a binary disjunction");
            }
            const FormulaPtr& f = major->parts[0];
            const FormulaPtr& g = major->parts[1];
            auto try_minors = [&](const Sequent* mf, const Sequent* mg) {
                if (!fol::equal(mf->conclusion, s.conclusion) ||
                    !fol::equal(mg->conclusion, s.conclusion)) {
                    return false;
                }
                if (!contains(mf->assumptions, f) || !contains(mg->assumptions, g)) {
                    return false;
                }
                Assumptions expected = set_union(
                    prem[0]->assumptions,
                    set_union(set_minus(mf->assumptions, f), set_minus(mg->assumptions, g)));
                return set_equal(s.assumptions, expected);
            };
            if (!try_minors(prem[1], prem[2]) && !try_minors(prem[2], prem[1])) {
                return fail("minor premises do not discharge the disjuncts");
            }
            continue;
        }
        if (rule == "impi") {
            if (!arity(1)) {
                return fail("impi takes one premise");
            }
            if (s.conclusion->kind != Formula::Kind::Implies) {
                return fail("conclusion is not an implication");
            }
            const FormulaPtr& f = s.conclusion->parts[0];
            const FormulaPtr& g = s.conclusion->parts[1];
            if (!fol::equal(prem[0]->conclusion, g)) {
                return fail("premise conclusion mismatch");
            }
            Assumptions expected = set_union(s.assumptions, {f});
            if (!set_equal(prem[0]->assumptions, expected)) {
                return fail("discharge mismatch");
            }
            continue;
        }
        if (rule == "impe") {
            if (!arity(2)) {
                return fail("impe takes two premises");
            }
            auto try_order = [&](const Sequent* arg, const Sequent* imp) {
                const FormulaPtr& c = imp->conclusion;
                if (c->kind != Formula::Kind::Implies) {
                    return false;
                }
                if (!fol::equal(c->parts[0], arg->conclusion) ||
                    !fol::equal(c->parts[1], s.conclusion)) {
                    return false;
                }
                return set_equal(s.assumptions, set_union(arg->assumptions, imp->assumptions));
            };
            if (!try_order(prem[0], prem[1]) && !try_order(prem[1], prem[0])) {
                return fail("premises do not fit modus ponens");
            }
            continue;
        }
        if (rule == "negi") {
            if (!arity(1)) {
                return fail("negi takes one premise");
            }
            if (!fol::is_not(*s.conclusion)) {
                return fail("conclusion is not a negation");
            }
            const FormulaPtr& f = s.conclusion->parts[0];
            if (prem[0]->conclusion->kind != Formula::Kind::Bottom) {
                return fail("premise conclusion is not bot");
            }
            Assumptions expected = set_union(s.assumptions, {f});
            if (!set_equal(prem[0]->assumptions, expected)) {
                return fail("discharge mismatch");
            }
            continue;
        }
        if (rule == "nege") {
            if (!arity(2)) {
                return fail("nege takes two premises");
            }
            if (s.conclusion->kind != Formula::Kind::Bottom) {
                return fail("conclusion is not bot");
            }
            auto try_order = [&](const Sequent* pos, const Sequent* neg) {
                if (!fol::is_not(*neg->conclusion)) {
                    return false;
                }
                if (!fol::equal(neg->conclusion->parts[0], pos->conclusion)) {
                    return false;
                }
                return set_equal(s.assumptions, set_union(pos->assumptions, neg->assumptions));
            };
            if (!try_order(prem[0], prem[1]) && !try_order(prem[1], prem[0])) {
                return fail("premises are not F and ~F");
            }
            continue;
        }
        if (rule == "c") {
            if (!arity(1)) {
                return fail("c takes one premise");
            }
            if (prem[0]->conclusion->kind != Formula::Kind::Bottom) {
                return fail("premise conclusion is not bot");
            }
            if (!set_equal(s.assumptions, prem[0]->assumptions)) {
                return fail("assumptions mismatch");
            }
            continue;
        }
        if (rule == "w") {
            if (!arity(1)) {
                return fail("w takes one premise");
            }
            if (!fol::equal(s.conclusion, prem[0]->conclusion)) {
                return fail("conclusion mismatch");
            }
            bool superset = std::all_of(
                prem[0]->assumptions.begin(), prem[0]->assumptions.end(),
                [&](const FormulaPtr& f) { return contains(s.assumptions, f); });
            if (!superset) {
                return fail("weakening must extend the assumptions");
            }
            continue;
        }
        if (rule == "demorgan") {
            if (!options.admit_demorgan) {
                return fail("demorgan steps are not admitted (enable with --admit demorgan)");
            }
            if (!arity(1)) {
                return fail("demorgan takes one premise");
            }
            if (!set_equal(s.assumptions, prem[0]->assumptions)) {
                return fail("assumptions mismatch");
            }
            if (!Demorgan::matches(prem[0]->conclusion, s.conclusion)) {
                return fail("not a one-step De Morgan rewriting");
            }
            continue;
        }
        return fail("unknown rule '" + rule + "'");
    }
    return {true, 0, ""};
}

std::string format_sequent(const Sequent& s) {
    std::string out;
    for (size_t i = 0; i < s.assumptions.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += fol::to_string(s.assumptions[i]);
    }
    out += " => " + fol::to_string(s.conclusion);
    return out;
}

} // namespace aspforge::ndproof
