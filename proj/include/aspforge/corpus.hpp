#ifndef ASPFORGE_CORPUS_HPP
#define ASPFORGE_CORPUS_HPP

#include "aspforge/actionlang.hpp"
#include "aspforge/ast.hpp"

#include <string>
#include <vector>

namespace aspforge::corpus {

struct InstanceParams {
    std::vector<std::string> actions = {"a1", "a2"};
    int horizon = 1;                 // the constant n; steps run 0..n
    std::optional<int> goal_step;    // defaults to horizon
};

// The planning module built from choice and aggregate rules:
//   success :- goal(I), step(I).          :- not success.
//   :- o(A,I), non_o(A,I).
//   non_o(A,I) :- action(A), step(I), not o(A,I).
//   {o(A,I)} :- action(A), SG(I).
//   :- 2 <= #count{A : o(A,I)}, SG(I).
//   :- not 1 <= #count{A : o(A,I)}, SG(I).
// with SG(I) = step(I), not goal(I), I != n.
Program build_plan_choice(const InstanceParams& params);

// The disjunctive planning module: the choice and aggregate rules replaced by
//   o(A,I) | non_o(A,I) :- action(A), SG(I).
//   :- o(A,I), o(A2,I), action(A), action(A2), A != A2.
//   sthHpd(I) :- o(A,I).
//   :- not sthHpd(I), SG(I).
Program build_plan_disj(const InstanceParams& params);

// Facts action(ai), step(0..n) and a goal fact at the goal step.
Program build_plan_instance(const InstanceParams& params);

// Individually useful rules of the two modules.
Rule rule_oo_denial(const InstanceParams& params);            // :- o,non_o
Rule rule_non_o_defining(const InstanceParams& params);       // non_o :- ..., not o
Rule rule_o_choice(const InstanceParams& params);             // {o(A,I)} :- ...
Rule rule_atmost_aggregate(const InstanceParams& params);     // :- 2 <= #count...
Rule rule_atleast_aggregate(const InstanceParams& params);    // :- not 1 <= #count...
Rule rule_o_disjunction(const InstanceParams& params);        // o | non_o :- ...
Rule rule_pairwise_denial(const InstanceParams& params);      // :- o,o',A != A2
Rule rule_sthhpd_defining(const InstanceParams& params);      // sthHpd(I) :- o(A,I)
Rule rule_sthhpd_denial(const InstanceParams& params);        // :- not sthHpd(I), SG(I)
Rule rule_non_o_subsumed(const InstanceParams& params);       // non_o :- not o, action, SG
Rule rule_o_defining(const InstanceParams& params);           // o :- not non_o, action, SG

// Sample program: the five-way disjunctive fact over a/b/c/d/e(1) plus the
// a<->b loop.
Program build_pisamp();

// Water domain: two fluents, one action, one static law, one effect law and
// inertia for everything.
actionlang::ActionDescription build_water();
std::string water_act_text();

} // namespace aspforge::corpus

#endif
