#ifndef ASPFORGE_FORMULA_HPP
#define ASPFORGE_FORMULA_HPP

#include "aspforge/ast.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace aspforge::fol {

// First-order formulas over the primitives bot, atoms, /\, \/, ->, forall,
// exists.  ~F is stored as F -> bot and top as bot -> bot.  Nodes are
// immutable and shared.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Bottom, Atom, And, Or, Implies, Forall, Exists };

    Kind kind = Kind::Bottom;
    aspforge::Atom atom;            // Atom
    std::vector<FormulaPtr> parts;  // And/Or: n-ary; Implies: exactly 2
    std::vector<std::string> vars;  // Forall/Exists
    FormulaPtr body;                // Forall/Exists
};

FormulaPtr f_bot();
FormulaPtr f_top(); // bot -> bot
FormulaPtr f_atom(Atom a);
FormulaPtr f_and(std::vector<FormulaPtr> parts); // empty -> top, singleton unwrapped
FormulaPtr f_or(std::vector<FormulaPtr> parts);  // empty -> bot, singleton unwrapped
FormulaPtr f_implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_iff(FormulaPtr lhs, FormulaPtr rhs); // (l -> r) /\ (r -> l)
FormulaPtr f_forall(std::vector<std::string> vars, FormulaPtr body); // empty vars unwrapped
FormulaPtr f_exists(std::vector<std::string> vars, FormulaPtr body);

bool is_not(const Formula& f);        // F -> bot
bool is_top(const Formula& f);        // bot -> bot
bool equal(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Equality modulo renaming of quantifier-bound variables.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

std::set<std::string> free_variables(const FormulaPtr& f);
void collect_atoms(const FormulaPtr& f, std::set<Atom>& out); // predicate atoms only
std::set<std::string> predicates_of(const FormulaPtr& f);

// Substitutes ground terms for free variables (no capture handling needed).
FormulaPtr substitute(const FormulaPtr& f, const std::map<std::string, Term>& sub);

// ASCII printer: forall/exists, ->, &, |, ~, bot.
std::string to_string(const FormulaPtr& f);

// Classical satisfaction of a variable-free formula; `holds` decides
// predicate atoms, ground equalities are decided syntactically.
bool eval_classical(const FormulaPtr& f, const std::function<bool(const Atom&)>& holds);

} // namespace aspforge::fol

#endif
