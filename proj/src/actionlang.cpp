#include "aspforge/actionlang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

namespace aspforge::actionlang {

namespace {

constexpr const char* kBarSuffix = "__bar";

struct LawParser {
    std::string_view text;
    size_t pos = 0;
    int line = 1;

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '%') {
                while (pos < text.size() && text[pos] != '\n') {
                    ++pos;
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                if (c == '\n') {
                    ++line;
                }
                ++pos;
            } else {
                break;
            }
        }
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw Error("action description parse error at line " + std::to_string(line) + ": " + msg);
    }

    std::string word() {
        skip_ws();
        std::string w;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
            w += text[pos++];
        }
        if (w.empty()) {
            fail("expected an identifier");
        }
        return w;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    std::string peek_word() {
        size_t save_pos = pos;
        int save_line = line;
        skip_ws();
        std::string w;
        size_t p = pos;
        while (p < text.size() && (std::isalnum(static_cast<unsigned char>(text[p])) || text[p] == '_')) {
            w += text[p++];
        }
        pos = save_pos;
        line = save_line;
        return w;
    }

    CLiteral literal() {
        skip_ws();
        bool positive = !eat('-');
        return {word(), positive};
    }

    std::vector<CLiteral> literal_list(const char* terminators) {
        std::vector<CLiteral> out;
        out.push_back(literal());
        while (eat(',')) {
            out.push_back(literal());
        }
        (void)terminators;
        return out;
    }
};

void check_literals(const ActionDescription& d, const std::vector<CLiteral>& lits,
                    bool fluents_only, const std::string& where) {
    auto is_fluent = [&](const std::string& n) {
        return std::find(d.fluents.begin(), d.fluents.end(), n) != d.fluents.end();
    };
    auto is_action = [&](const std::string& n) {
        return std::find(d.actions.begin(), d.actions.end(), n) != d.actions.end();
    };
    for (const CLiteral& l : lits) {
        if (fluents_only) {
            if (!is_fluent(l.name)) {
                throw Error("action description: " + where + " expects a fluent, got " + l.name);
            }
        } else if (!is_fluent(l.name) && !is_action(l.name)) {
            throw Error("action description: undeclared name " + l.name + " in " + where);
        }
    }
}

void add_static(ActionDescription& d, StaticLaw law) {
    if (std::find(d.statics.begin(), d.statics.end(), law) == d.statics.end()) {
        d.statics.push_back(std::move(law));
    }
}

void add_dynamic(ActionDescription& d, DynamicLaw law) {
    if (std::find(d.dynamics.begin(), d.dynamics.end(), law) == d.dynamics.end()) {
        d.dynamics.push_back(std::move(law));
    }
}

} // namespace

ActionDescription parse_action_description(std::string_view text) {
    ActionDescription d;
    LawParser p{text};
    bool saw_decl = false;
    while (!p.done()) {
        std::string key = p.peek_word();
        if (key == "fluents" || key == "actions") {
            p.word();
            p.expect(':');
            std::vector<std::string> names;
            names.push_back(p.word());
            while (p.eat(',')) {
                names.push_back(p.word());
            }
            p.expect('.');
            for (const std::string& n : names) {
                bool dup = std::find(d.fluents.begin(), d.fluents.end(), n) != d.fluents.end() ||
                           std::find(d.actions.begin(), d.actions.end(), n) != d.actions.end();
                if (dup) {
                    throw Error("action description: duplicate name " + n);
                }
                (key == "fluents" ? d.fluents : d.actions).push_back(n);
            }
            saw_decl = true;
            continue;
        }
        if (!saw_decl) {
            p.fail("fluents/actions declarations must precede laws");
        }
        if (key == "inertial") {
            p.word();
            std::vector<CLiteral> lits = p.literal_list(".");
            p.expect('.');
            check_literals(d, lits, true, "inertial");
            for (const CLiteral& l : lits) {
                for (const CLiteral& v : {l, l.complement()}) {
                    DynamicLaw law;
                    law.head = v;
                    law.if_part = {v};
                    law.after_part = {v};
                    add_dynamic(d, std::move(law));
                }
            }
            continue;
        }
        if (key != "caused") {
            p.fail("expected 'caused', 'inertial', 'fluents' or 'actions', got '" + key + "'");
        }
        p.word();
        std::optional<CLiteral> head;
        p.skip_ws();
        if (p.peek_word() == "bot") {
            p.word();
        } else {
            head = p.literal();
        }
        std::vector<CLiteral> if_part;
        std::vector<CLiteral> after_part;
        if (p.peek_word() == "if") {
            p.word();
            if_part.push_back(p.literal());
            while (p.eat(',')) {
                if_part.push_back(p.literal());
            }
        }
        if (p.peek_word() == "after") {
            p.word();
            after_part.push_back(p.literal());
            while (p.eat(',')) {
                after_part.push_back(p.literal());
            }
        }
        p.expect('.');
        if (head) {
            check_literals(d, {*head}, true, "law head");
        }
        check_literals(d, if_part, true, "if part");
        check_literals(d, after_part, false, "after part");
        if (after_part.empty()) {
            add_static(d, StaticLaw{head, std::move(if_part)});
        } else {
            add_dynamic(d, DynamicLaw{head, std::move(if_part), std::move(after_part)});
        }
    }
    if (d.fluents.empty()) {
        throw Error("action description: no fluents declared");
    }
    return d;
}

namespace {

std::string format_literal(const CLiteral& l) { return (l.positive ? "" : "-") + l.name; }

std::string format_list(const std::vector<CLiteral>& lits) {
    std::string out;
    for (size_t i = 0; i < lits.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += format_literal(lits[i]);
    }
    return out;
}

} // namespace

std::string format_action_description(const ActionDescription& d) {
    std::string out = "fluents: ";
    for (size_t i = 0; i < d.fluents.size(); ++i) {
        out += (i ? ", " : "") + d.fluents[i];
    }
    out += ".\n";
    if (!d.actions.empty()) {
        out += "actions: ";
        for (size_t i = 0; i < d.actions.size(); ++i) {
            out += (i ? ", " : "") + d.actions[i];
        }
        out += ".\n";
    }
    for (const StaticLaw& l : d.statics) {
        out += "caused " + (l.head ? format_literal(*l.head) : std::string("bot"));
        if (!l.if_part.empty()) {
            out += " if " + format_list(l.if_part);
        }
        out += ".\n";
    }
    for (const DynamicLaw& l : d.dynamics) {
        out += "caused " + (l.head ? format_literal(*l.head) : std::string("bot"));
        if (!l.if_part.empty()) {
            out += " if " + format_list(l.if_part);
        }
        out += " after " + format_list(l.after_part) + ".\n";
    }
    return out;
}

namespace {

int fluent_index(const ActionDescription& d, const std::string& name) {
    auto it = std::find(d.fluents.begin(), d.fluents.end(), name);
    return static_cast<int>(it - d.fluents.begin());
}

int action_index(const ActionDescription& d, const std::string& name) {
    auto it = std::find(d.actions.begin(), d.actions.end(), name);
    return static_cast<int>(it - d.actions.begin());
}

bool holds_fluent(const ActionDescription& d, const State& s, const CLiteral& l) {
    return s.values[static_cast<size_t>(fluent_index(d, l.name))] == l.positive;
}

// literal over s u a: fluents looked up in s, actions in a
bool holds_mixed(const ActionDescription& d, const State& s, const ActionValue& a,
                 const CLiteral& l) {
    auto fit = std::find(d.fluents.begin(), d.fluents.end(), l.name);
    if (fit != d.fluents.end()) {
        return s.values[static_cast<size_t>(fit - d.fluents.begin())] == l.positive;
    }
    return a.values[static_cast<size_t>(action_index(d, l.name))] == l.positive;
}

} // namespace

std::vector<CLiteral> state_literals(const ActionDescription& d, const State& s) {
    std::vector<CLiteral> out;
    for (size_t i = 0; i < d.fluents.size(); ++i) {
        out.push_back({d.fluents[i], s.values[i]});
    }
    return out;
}

std::vector<CLiteral> action_literals(const ActionDescription& d, const ActionValue& a) {
    std::vector<CLiteral> out;
    for (size_t i = 0; i < d.actions.size(); ++i) {
        out.push_back({d.actions[i], a.values[i]});
    }
    return out;
}

std::vector<State> states(const ActionDescription& d, int cap) {
    size_t n = d.fluents.size();
    if (static_cast<int>(n) > cap) {
        throw CapExceeded("states: fluent count exceeds the cap");
    }
    std::vector<State> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        State s;
        s.values.resize(n);
        // first-declared fluent is the most significant bit
        for (size_t i = 0; i < n; ++i) {
            s.values[i] = (mask >> (n - 1 - i)) & 1;
        }
        bool ok = true;
        for (const StaticLaw& law : d.statics) {
            bool fires = std::all_of(law.if_part.begin(), law.if_part.end(),
                                     [&](const CLiteral& l) { return holds_fluent(d, s, l); });
            if (!fires) {
                continue;
            }
            if (!law.head || !holds_fluent(d, s, *law.head)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::set<CLiteral> caused_literals(const ActionDescription& d, const State& s,
                                   const ActionValue& a, const State& s2, bool* fired_bot) {
    std::set<CLiteral> caused;
    bool bot = false;
    for (const StaticLaw& law : d.statics) {
        bool fires = std::all_of(law.if_part.begin(), law.if_part.end(),
                                 [&](const CLiteral& l) { return holds_fluent(d, s2, l); });
        if (!fires) {
            continue;
        }
        if (law.head) {
            caused.insert(*law.head);
        } else {
            bot = true;
        }
    }
    for (const DynamicLaw& law : d.dynamics) {
        bool fires = std::all_of(law.if_part.begin(), law.if_part.end(),
                                 [&](const CLiteral& l) { return holds_fluent(d, s2, l); }) &&
                     std::all_of(law.after_part.begin(), law.after_part.end(),
                                 [&](const CLiteral& l) { return holds_mixed(d, s, a, l); });
        if (!fires) {
            continue;
        }
        if (law.head) {
            caused.insert(*law.head);
        } else {
            bot = true;
        }
    }
    if (fired_bot) {
        *fired_bot = bot;
    }
    return caused;
}

bool causally_explained(const ActionDescription& d, const State& s, const ActionValue& a,
                        const State& s2) {
    bool bot = false;
    std::set<CLiteral> caused = caused_literals(d, s, a, s2, &bot);
    if (bot) {
        return false;
    }
    std::vector<CLiteral> lits = state_literals(d, s2);
    std::set<CLiteral> s2_set(lits.begin(), lits.end());
    return caused == s2_set;
}

TransitionSystem transition_system(const ActionDescription& d, int cap) {
    TransitionSystem ts;
    ts.states = states(d, cap);
    size_t m = d.actions.size();
    if (static_cast<int>(m) > cap) {
        throw CapExceeded("transition_system: action count exceeds the cap");
    }
    for (const State& s : ts.states) {
        for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
            ActionValue a;
            a.values.resize(m);
            for (size_t i = 0; i < m; ++i) {
                a.values[i] = (mask >> (m - 1 - i)) & 1;
            }
            for (const State& s2 : ts.states) {
                if (causally_explained(d, s, a, s2)) {
                    ts.transitions.push_back({s, a, s2});
                }
            }
        }
    }
    return ts;
}

std::vector<Path> paths(const TransitionSystem& ts, int horizon) {
    std::vector<Path> out;
    std::function<void(Path&)> extend = [&](Path& partial) {
        if (static_cast<int>(partial.actions.size()) == horizon) {
            out.push_back(partial);
            return;
        }
        const State tip = partial.states.back(); // copy: push_back below reallocates
        for (const Transition& t : ts.transitions) {
            if (t.from != tip) {
                continue;
            }
            partial.states.push_back(t.to);
            partial.actions.push_back(t.action);
            extend(partial);
            partial.states.pop_back();
            partial.actions.pop_back();
        }
    };
    for (const State& s : ts.states) {
        Path p;
        p.states.push_back(s);
        extend(p);
    }
    return out;
}

// --------------------------------------------------------------------------
// Translations.
// --------------------------------------------------------------------------

namespace {

Term time_term(int t) { return Term::constant(std::to_string(t)); }

Atom timed(const std::string& name, int t) { return Atom::predicate(name, {time_term(t)}); }

std::string bar(const std::string& name) { return name + kBarSuffix; }

// h(l): the literal's atom name, bar-name for negative literals.
std::string hat(const CLiteral& l) { return l.positive ? l.name : bar(l.name); }

// o(l): the complementary atom name.
std::string hat_complement(const CLiteral& l) { return l.positive ? bar(l.name) : l.name; }

Rule denial(std::vector<BodyElem> body) {
    Rule r;
    r.head = Head::denial();
    r.body = std::move(body);
    return r;
}

Rule fact_rule(Atom head, std::vector<BodyElem> body = {}) {
    Rule r;
    r.head = Head::disjunction({std::move(head)});
    r.body = std::move(body);
    return r;
}

Rule choice_rule(Atom head, std::vector<BodyElem> body = {}) {
    Rule r;
    r.head = Head::choice(std::move(head));
    r.body = std::move(body);
    return r;
}

} // namespace

Program translate_lp(const ActionDescription& d, int horizon) {
    if (horizon < 1) {
        throw PreconditionViolation("translate_lp: horizon must be >= 1");
    }
    Program out;
    // group 1: consistency and completeness for fluent and action atoms
    for (const std::string& f : d.fluents) {
        for (int t = 0; t <= horizon; ++t) {
            out.rules.push_back(denial({BodyElem::plain(timed(f, t)), BodyElem::plain(timed(bar(f), t))}));
            out.rules.push_back(
                denial({BodyElem::plain(timed(f, t), 1), BodyElem::plain(timed(bar(f), t), 1)}));
        }
    }
    for (const std::string& a : d.actions) {
        for (int t = 0; t < horizon; ++t) {
            out.rules.push_back(denial({BodyElem::plain(timed(a, t)), BodyElem::plain(timed(bar(a), t))}));
            out.rules.push_back(
                denial({BodyElem::plain(timed(a, t), 1), BodyElem::plain(timed(bar(a), t), 1)}));
        }
    }
    // group 2: static laws
    for (const StaticLaw& law : d.statics) {
        for (int t = 0; t <= horizon; ++t) {
            std::vector<BodyElem> body;
            for (const CLiteral& l : law.if_part) {
                body.push_back(BodyElem::plain(timed(hat_complement(l), t), 1));
            }
            if (law.head) {
                out.rules.push_back(fact_rule(timed(hat(*law.head), t), std::move(body)));
            } else {
                out.rules.push_back(denial(std::move(body)));
            }
        }
    }
    // group 3: dynamic laws
    for (const DynamicLaw& law : d.dynamics) {
        for (int t = 0; t < horizon; ++t) {
            std::vector<BodyElem> body;
            for (const CLiteral& l : law.if_part) {
                body.push_back(BodyElem::plain(timed(hat_complement(l), t + 1), 1));
            }
            for (const CLiteral& l : law.after_part) {
                body.push_back(BodyElem::plain(timed(hat(l), t)));
            }
            if (law.head) {
                out.rules.push_back(fact_rule(timed(hat(*law.head), t + 1), std::move(body)));
            } else {
                out.rules.push_back(denial(std::move(body)));
            }
        }
    }
    // group 4: initial-state defaults
    for (const std::string& f : d.fluents) {
        out.rules.push_back(fact_rule(timed(bar(f), 0), {BodyElem::plain(timed(f, 0), 1)}));
        out.rules.push_back(fact_rule(timed(f, 0), {BodyElem::plain(timed(bar(f), 0), 1)}));
    }
    // group 5: action exogeneity
    for (const std::string& a : d.actions) {
        for (int t = 0; t < horizon; ++t) {
            out.rules.push_back(fact_rule(timed(bar(a), t), {BodyElem::plain(timed(a, t), 1)}));
            out.rules.push_back(fact_rule(timed(a, t), {BodyElem::plain(timed(bar(a), t), 1)}));
        }
    }
    return out;
}

Program translate_simp(const ActionDescription& d, int horizon) {
    if (horizon < 1) {
        throw PreconditionViolation("translate_simp: horizon must be >= 1");
    }
    auto hat_hat = [&](const CLiteral& l, int t) -> BodyElem {
        // negative action literals become `not a(t)`
        bool is_action = std::find(d.actions.begin(), d.actions.end(), l.name) != d.actions.end();
        if (is_action && !l.positive) {
            return BodyElem::plain(timed(l.name, t), 1);
        }
        return BodyElem::plain(timed(hat(l), t));
    };
    Program out;
    // group 1: fluent-only consistency and completeness
    for (const std::string& f : d.fluents) {
        for (int t = 0; t <= horizon; ++t) {
            out.rules.push_back(denial({BodyElem::plain(timed(f, t)), BodyElem::plain(timed(bar(f), t))}));
            out.rules.push_back(
                denial({BodyElem::plain(timed(f, t), 1), BodyElem::plain(timed(bar(f), t), 1)}));
        }
    }
    // group 2: static laws with double negation
    for (const StaticLaw& law : d.statics) {
        for (int t = 0; t <= horizon; ++t) {
            std::vector<BodyElem> body;
            for (const CLiteral& l : law.if_part) {
                body.push_back(BodyElem::plain(timed(hat(l), t), 2));
            }
            if (law.head) {
                out.rules.push_back(fact_rule(timed(hat(*law.head), t), std::move(body)));
            } else {
                out.rules.push_back(denial(std::move(body)));
            }
        }
    }
    // group 3: dynamic laws
    for (const DynamicLaw& law : d.dynamics) {
        for (int t = 0; t < horizon; ++t) {
            std::vector<BodyElem> body;
            for (const CLiteral& l : law.if_part) {
                body.push_back(BodyElem::plain(timed(hat(l), t + 1), 2));
            }
            for (const CLiteral& l : law.after_part) {
                body.push_back(hat_hat(l, t));
            }
            if (law.head) {
                out.rules.push_back(fact_rule(timed(hat(*law.head), t + 1), std::move(body)));
            } else {
                out.rules.push_back(denial(std::move(body)));
            }
        }
    }
    // group 4: initial fluent choices
    for (const std::string& f : d.fluents) {
        out.rules.push_back(choice_rule(timed(bar(f), 0)));
        out.rules.push_back(choice_rule(timed(f, 0)));
    }
    // group 5: action choices
    for (const std::string& a : d.actions) {
        for (int t = 0; t < horizon; ++t) {
            out.rules.push_back(choice_rule(timed(a, t)));
        }
    }
    return out;
}

std::set<Atom> encode_path(const ActionDescription& d, const Path& path) {
    std::set<Atom> out;
    int horizon = static_cast<int>(path.actions.size());
    for (int t = 0; t <= horizon; ++t) {
        for (const CLiteral& l : state_literals(d, path.states[static_cast<size_t>(t)])) {
            out.insert(timed(hat(l), t));
        }
    }
    for (int t = 0; t < horizon; ++t) {
        for (const CLiteral& l : action_literals(d, path.actions[static_cast<size_t>(t)])) {
            out.insert(timed(hat(l), t));
        }
    }
    return out;
}

std::optional<Path> decode_lp_answer(const ActionDescription& d, int horizon,
                                     const std::set<Atom>& atoms) {
    auto truth_of = [&](const std::string& name, int t) -> std::optional<bool> {
        bool pos = atoms.count(timed(name, t)) != 0;
        bool neg = atoms.count(timed(bar(name), t)) != 0;
        if (pos == neg) {
            return std::nullopt; // not total or inconsistent
        }
        return pos;
    };
    Path path;
    for (int t = 0; t <= horizon; ++t) {
        State s;
        for (const std::string& f : d.fluents) {
            auto v = truth_of(f, t);
            if (!v) {
                return std::nullopt;
            }
            s.values.push_back(*v);
        }
        path.states.push_back(std::move(s));
    }
    for (int t = 0; t < horizon; ++t) {
        ActionValue a;
        for (const std::string& act : d.actions) {
            auto v = truth_of(act, t);
            if (!v) {
                return std::nullopt;
            }
            a.values.push_back(*v);
        }
        path.actions.push_back(std::move(a));
    }
    return path;
}

} // namespace aspforge::actionlang
