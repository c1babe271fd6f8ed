#ifndef ASPFORGE_ACTIONLANG_HPP
#define ASPFORGE_ACTIONLANG_HPP

#include "aspforge/ast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aspforge::actionlang {

struct CLiteral {
    std::string name;
    bool positive = true;

    CLiteral complement() const { return {name, !positive}; }

    friend auto operator<=>(const CLiteral&, const CLiteral&) = default;
};

struct StaticLaw {
    std::optional<CLiteral> head; // nullopt = bot
    std::vector<CLiteral> if_part;

    friend auto operator<=>(const StaticLaw&, const StaticLaw&) = default;
};

struct DynamicLaw {
    std::optional<CLiteral> head;
    std::vector<CLiteral> if_part;
    std::vector<CLiteral> after_part; // nonempty

    friend auto operator<=>(const DynamicLaw&, const DynamicLaw&) = default;
};

struct ActionDescription {
    std::vector<std::string> fluents; // declaration order
    std::vector<std::string> actions;
    std::vector<StaticLaw> statics;
    std::vector<DynamicLaw> dynamics;
};

// Total interpretations as sign vectors following declaration order.
struct State {
    std::vector<bool> values; // values[i] = sign of fluents[i]

    friend auto operator<=>(const State&, const State&) = default;
};

struct ActionValue {
    std::vector<bool> values; // values[i] = sign of actions[i]

    friend auto operator<=>(const ActionValue&, const ActionValue&) = default;
};

struct Transition {
    State from;
    ActionValue action;
    State to;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct TransitionSystem {
    std::vector<State> states;
    std::vector<Transition> transitions;
};

// Grammar:
//   fluents: f1, f2.        actions: a1.
//   caused L if L1, ..., Lm.
//   caused L if L1, ..., Lm after Lm1, ..., Ln.
//   caused L after L1, ..., Ln.
//   inertial f, -g, ... .
// where L is `name`, `-name` or `bot` (heads only).  `inertial l` abbreviates
// the pair of dynamic laws `caused l if l after l` / `caused -l if -l after
// -l`; duplicate laws collapse.  Undeclared or duplicated names are errors.
ActionDescription parse_action_description(std::string_view text);

std::string format_action_description(const ActionDescription& d);

std::vector<CLiteral> state_literals(const ActionDescription& d, const State& s);
std::vector<CLiteral> action_literals(const ActionDescription& d, const ActionValue& a);

// All total fluent interpretations satisfying every static law.
std::vector<State> states(const ActionDescription& d, int cap = 20);

// Heads of static laws whose if-part holds in s2 plus heads of dynamic laws
// whose if-part holds in s2 and after-part holds in s + a.  Fired bot heads
// are reported through the flag.
std::set<CLiteral> caused_literals(const ActionDescription& d, const State& s,
                                   const ActionValue& a, const State& s2,
                                   bool* fired_bot = nullptr);

bool causally_explained(const ActionDescription& d, const State& s, const ActionValue& a,
                        const State& s2);

TransitionSystem transition_system(const ActionDescription& d, int cap = 20);

struct Path {
    std::vector<State> states;        // length T+1
    std::vector<ActionValue> actions; // length T
};

std::vector<Path> paths(const TransitionSystem& ts, int horizon);

// lp_T translation: complement atoms (`<name>__bar`), consistency and
// completeness denials for fluent and action atoms, static rules with
// `not <complement>` bodies, dynamic rules, initial-state defaults and
// action exogeneity pairs.  Time steps are object constants 0..T.
Program translate_lp(const ActionDescription& d, int horizon);

// simp_T translation: fluent-only consistency/completeness, static and
// dynamic rules with `not not` bodies (negative action literals become
// `not a(t)`), choice rules for initial fluents and for action atoms.
Program translate_simp(const ActionDescription& d, int horizon);

// Atom set encoding a path in the language of lp_T.
std::set<Atom> encode_path(const ActionDescription& d, const Path& path);

// Decodes an lp_T answer set back into a path; nullopt when the set is not
// total and consistent at every step.
std::optional<Path> decode_lp_answer(const ActionDescription& d, int horizon,
                                     const std::set<Atom>& atoms);

} // namespace aspforge::actionlang

#endif
