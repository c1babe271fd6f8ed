#include "aspforge/corpus.hpp"

#include "aspforge/parser.hpp"

namespace aspforge::corpus {

namespace {

Term var(const char* n) { return Term::variable(n); }

std::vector<BodyElem> sg_body(const InstanceParams& params, const char* step_var = "I") {
    // SG(I) = step(I), not goal(I), I != n
    return {
        BodyElem::plain(Atom::predicate("step", {var(step_var)})),
        BodyElem::plain(Atom::predicate("goal", {var(step_var)}), 1),
        BodyElem::plain(Atom::equality(var(step_var), Term::constant(std::to_string(params.horizon))), 1),
    };
}

AggregateExpr count_o(int bound) {
    AggregateExpr agg;
    agg.bound = bound;
    agg.agg_vars = {"A"};
    agg.conditions = {Literal{Atom::predicate("o", {var("A"), var("I")}), false}};
    return agg;
}

Rule with_sg(Rule r, const InstanceParams& params) {
    for (BodyElem& e : sg_body(params)) {
        r.body.push_back(e);
    }
    return r;
}

} // namespace

Rule rule_oo_denial(const InstanceParams&) {
    Rule r;
    r.head = Head::denial();
    r.body = {BodyElem::plain(Atom::predicate("o", {var("A"), var("I")})),
              BodyElem::plain(Atom::predicate("non_o", {var("A"), var("I")}))};
    return r;
}

Rule rule_non_o_defining(const InstanceParams&) {
    Rule r;
    r.head = Head::disjunction({Atom::predicate("non_o", {var("A"), var("I")})});
    r.body = {BodyElem::plain(Atom::predicate("action", {var("A")})),
              BodyElem::plain(Atom::predicate("step", {var("I")})),
              BodyElem::plain(Atom::predicate("o", {var("A"), var("I")}), 1)};
    return r;
}

Rule rule_o_choice(const InstanceParams& params) {
    Rule r;
    r.head = Head::choice(Atom::predicate("o", {var("A"), var("I")}));
    r.body = {BodyElem::plain(Atom::predicate("action", {var("A")}))};
    return with_sg(std::move(r), params);
}

Rule rule_atmost_aggregate(const InstanceParams& params) {
    Rule r;
    r.head = Head::denial();
    r.body = {BodyElem::aggregate(count_o(2))};
    return with_sg(std::move(r), params);
}

Rule rule_atleast_aggregate(const InstanceParams& params) {
    Rule r;
    r.head = Head::denial();
    r.body = {BodyElem::aggregate(count_o(1), /*neg=*/true)};
    return with_sg(std::move(r), params);
}

Rule rule_o_disjunction(const InstanceParams& params) {
    Rule r;
    r.head = Head::disjunction({Atom::predicate("o", {var("A"), var("I")}),
                                Atom::predicate("non_o", {var("A"), var("I")})});
    r.body = {BodyElem::plain(Atom::predicate("action", {var("A")}))};
    return with_sg(std::move(r), params);
}

Rule rule_pairwise_denial(const InstanceParams&) {
    Rule r;
    r.head = Head::denial();
    r.body = {BodyElem::plain(Atom::predicate("o", {var("A"), var("I")})),
              BodyElem::plain(Atom::predicate("o", {var("A2"), var("I")})),
              BodyElem::plain(Atom::predicate("action", {var("A")})),
              BodyElem::plain(Atom::predicate("action", {var("A2")})),
              BodyElem::plain(Atom::equality(var("A"), var("A2")), 1)};
    return r;
}

Rule rule_sthhpd_defining(const InstanceParams&) {
    Rule r;
    r.head = Head::disjunction({Atom::predicate("sthHpd", {var("I")})});
    r.body = {BodyElem::plain(Atom::predicate("o", {var("A"), var("I")}))};
    return r;
}

Rule rule_sthhpd_denial(const InstanceParams& params) {
    Rule r;
    r.head = Head::denial();
    r.body = {BodyElem::plain(Atom::predicate("sthHpd", {var("I")}), 1)};
    return with_sg(std::move(r), params);
}

Rule rule_non_o_subsumed(const InstanceParams& params) {
    Rule r;
    r.head = Head::disjunction({Atom::predicate("non_o", {var("A"), var("I")})});
    r.body = {BodyElem::plain(Atom::predicate("o", {var("A"), var("I")}), 1),
              BodyElem::plain(Atom::predicate("action", {var("A")}))};
    return with_sg(std::move(r), params);
}

Rule rule_o_defining(const InstanceParams& params) {
    Rule r;
    r.head = Head::disjunction({Atom::predicate("o", {var("A"), var("I")})});
    r.body = {BodyElem::plain(Atom::predicate("non_o", {var("A"), var("I")}), 1),
              BodyElem::plain(Atom::predicate("action", {var("A")}))};
    return with_sg(std::move(r), params);
}

namespace {

std::vector<Rule> module_prefix(const InstanceParams& params) {
    Rule success;
    success.head = Head::disjunction({Atom::predicate("success")});
    success.body = {BodyElem::plain(Atom::predicate("goal", {var("I")})),
                    BodyElem::plain(Atom::predicate("step", {var("I")}))};
    Rule must_succeed;
    must_succeed.head = Head::denial();
    must_succeed.body = {BodyElem::plain(Atom::predicate("success"), 1)};
    return {success, must_succeed, rule_oo_denial(params), rule_non_o_defining(params)};
}

} // namespace

Program build_plan_choice(const InstanceParams& params) {
    Program p;
    p.rules = module_prefix(params);
    p.rules.push_back(rule_o_choice(params));
    p.rules.push_back(rule_atmost_aggregate(params));
    p.rules.push_back(rule_atleast_aggregate(params));
    return p;
}

Program build_plan_disj(const InstanceParams& params) {
    Program p;
    p.rules = module_prefix(params);
    p.rules.push_back(rule_o_disjunction(params));
    p.rules.push_back(rule_pairwise_denial(params));
    p.rules.push_back(rule_sthhpd_defining(params));
    p.rules.push_back(rule_sthhpd_denial(params));
    return p;
}

Program build_plan_instance(const InstanceParams& params) {
    Program p;
    for (const std::string& a : params.actions) {
        Rule r;
        r.head = Head::disjunction({Atom::predicate("action", {Term::constant(a)})});
        p.rules.push_back(std::move(r));
    }
    for (int i = 0; i <= params.horizon; ++i) {
        Rule r;
        r.head = Head::disjunction({Atom::predicate("step", {Term::constant(std::to_string(i))})});
        p.rules.push_back(std::move(r));
    }
    int goal = params.goal_step.value_or(params.horizon);
    Rule g;
    g.head = Head::disjunction({Atom::predicate("goal", {Term::constant(std::to_string(goal))})});
    p.rules.push_back(std::move(g));
    return p;
}

Program build_pisamp() {
    return parser::parse_program(
        "a | b | c | d | e(1).\n"
        "a :- b.\n"
        "b :- a.\n");
}

actionlang::ActionDescription build_water() {
    return actionlang::parse_action_description(water_act_text());
}

std::string water_act_text() {
    return "% effects of putting an object in water\n"
           "fluents: inWater, wet.\n"
           "actions: putInWater.\n"
           "caused wet if inWater.\n"
           "caused inWater after putInWater.\n"
           "inertial inWater, -inWater, wet, -wet.\n";
}

} // namespace aspforge::corpus
