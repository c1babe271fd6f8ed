#ifndef ASPFORGE_FOL_HPP
#define ASPFORGE_FOL_HPP

#include "aspforge/ast.hpp"
#include "aspforge/formula.hpp"

namespace aspforge::fol {

// FOL representation of `b <= #count{x : F(x)}`:
//   exists x^1..x^b [ /\_i F(x^i)  /\  /\_{i<j} ~(x^i = x^j) ]
// with fresh copies named by appending __1..__b (indices shifted upward on a
// clash with `avoid`).  For tuples the inequality conjunct for a pair (i,j)
// is the negated conjunction of componentwise equalities.
FormulaPtr fol_of_aggregate(const AggregateExpr& agg,
                            const std::set<std::string>& avoid = {});

FormulaPtr fol_of_body_elem(const BodyElem& elem, const std::set<std::string>& avoid);
FormulaPtr fol_of_body(const std::vector<BodyElem>& body, const std::set<std::string>& avoid);

// Disjunctive head: forall~(Body -> a1 | ... | al); choice head:
// forall~(~~a /\ Body -> a); denial: forall~(Body -> bot).  Facts come out
// as their bare head.
FormulaPtr fol_of_rule(const Rule& rule);

// Conjunction of the rule formulas in program order (singleton unwrapped).
FormulaPtr fol_of_program(const Program& program);

// Clark normal form relative to `preds`: one conjunct
// forall x (G_p -> p(x)) per predicate, G_p the disjunction over the p-head
// rules.  Choice rules contribute ~~p-strengthened disjuncts.  Rules whose
// head predicate is outside `preds` must not exist in `program`; denials must
// be stripped beforehand.
FormulaPtr clark_normal_form(const Program& program, const std::set<std::string>& preds);

// Upgrades each conjunct forall x (G -> p(x)) to forall x (G <-> p(x)).
FormulaPtr completion(const FormulaPtr& cnf);

} // namespace aspforge::fol

#endif
