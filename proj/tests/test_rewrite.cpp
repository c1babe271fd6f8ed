#include "aspforge/rewrite.hpp"

#include "aspforge/corpus.hpp"
#include "aspforge/fol.hpp"
#include "aspforge/ground.hpp"
#include "aspforge/parser.hpp"
#include "generators.hpp"

#include <doctest.h>

#include <random>

using namespace aspforge;
using namespace aspforge::rewrite;

namespace {

Rule rule(const char* text) { return parser::parse_rule(text); }
Program prog(const char* text) { return parser::parse_program(text); }

bool same_rule(const Rule& a, const Rule& b) { return subsumes(a, b) && subsumes(b, a); }

bool ht_equivalent_programs(const Program& a, const Program& b, const Signature& sig_extra) {
    Signature sig = signature(a);
    sig.merge(signature(b));
    sig.merge(sig_extra);
    if (sig.object_constants.empty()) {
        sig.object_constants.insert("c0");
    }
    ground::HerbrandUniverse u = ground::herbrand_universe(sig, 0);
    fol::FormulaPtr fa = ground::instantiate(fol::fol_of_program(a), u);
    fol::FormulaPtr fb = ground::instantiate(fol::fol_of_program(b), u);
    return stablemodels::strongly_equivalent_ground(fa, fb).equivalent;
}

} // namespace

TEST_CASE("subsumption removes the extended non_o rule") {
    corpus::InstanceParams params;
    Program p;
    p.rules.push_back(corpus::rule_non_o_defining(params));
    p.rules.push_back(corpus::rule_non_o_subsumed(params));
    auto res = subsumption_simplify(p);
    REQUIRE(res.program.rules.size() == 1);
    CHECK(res.program.rules[0] == corpus::rule_non_o_defining(params));
    REQUIRE(res.report.removed.size() == 1);
}

TEST_CASE("subsumption keeps programs without redundancy") {
    Program p = prog("a :- b. a :- c. d :- a.");
    auto res = subsumption_simplify(p);
    CHECK(res.program == p);
    CHECK(res.report.removed.empty());
}

TEST_CASE("subsumption removes two extensions of one base rule") {
    Program p = prog("a :- b. a :- b, c. a :- b, d.");
    auto res = subsumption_simplify(p);
    REQUIRE(res.program.rules.size() == 1);
    CHECK(res.program.rules[0] == rule("a :- b."));
}

TEST_CASE("mutually subsuming rules keep the first occurrence") {
    Program p = prog("a :- b, c. a :- c, b.");
    auto res = subsumption_simplify(p);
    REQUIRE(res.program.rules.size() == 1);
    CHECK(res.program.rules[0] == rule("a :- b, c."));
}

TEST_CASE("subsumption_add appends the extended rule") {
    Program p = prog("a :- b.");
    auto res = subsumption_add(p, p.rules[0], {BodyElem::plain(Atom::predicate("c"), 1)});
    REQUIRE(res.program.rules.size() == 2);
    CHECK(res.program.rules[1] == rule("a :- b, not c."));
    CHECK(subsumes(p.rules[0], res.program.rules[1]));
}

TEST_CASE("eliminate_aggregate turns the bound-2 count into inequalities") {
    corpus::InstanceParams params;
    Rule out = eliminate_aggregate(corpus::rule_atmost_aggregate(params));
    Rule want = rule(
        ":- o(A__1,I), o(A__2,I), A__1 != A__2, step(I), not goal(I), I != 1.");
    CHECK(same_rule(out, want));
}

TEST_CASE("eliminate_aggregate with bound 1 leaves the bare literal") {
    Rule out = eliminate_aggregate(rule("h :- 1 <= #count{X : p(X)}."));
    CHECK(same_rule(out, rule("h :- p(X__1).")));
}

TEST_CASE("eliminate_aggregate refuses negated aggregates and shared variables") {
    CHECK_THROWS_AS(eliminate_aggregate(rule(":- not 1 <= #count{X : p(X)}.")), NotApplicable);
    CHECK_THROWS_AS(eliminate_aggregate(rule("h(X) :- 2 <= #count{X : p(X)}.")), NotApplicable);
    CHECK_THROWS_AS(eliminate_aggregate(rule("h :- 2 <= #count{X : p(X)}, q(X).")), NotApplicable);
    CHECK_THROWS_AS(eliminate_aggregate(rule("h :- 2 <= #count{X,Y : e(X,Y)}.")), NotApplicable);
}

TEST_CASE("unwrap and wrap the singleton count") {
    Rule wrapped = rule("sthHpd(I) :- 1 <= #count{A : o(A,I)}.");
    Rule plain = rule("sthHpd(I) :- o(A,I).");
    CHECK(unwrap_singleton_count(wrapped) == plain);
    CHECK(wrap_singleton_count(plain) == wrapped);
    CHECK(unwrap_singleton_count(wrap_singleton_count(plain)) == plain);

    CHECK_THROWS_AS(unwrap_singleton_count(rule("h(X) :- 1 <= #count{X : p(X)}.")), NotApplicable);
    CHECK_THROWS_AS(wrap_singleton_count(rule("h(X) :- p(X).")), NotApplicable);
}

TEST_CASE("choice_to_defining rewrites the plan-choice pattern") {
    corpus::InstanceParams params;
    Program pc = corpus::build_plan_choice(params);
    auto res = choice_to_defining(pc, "o", "non_o");
    bool found = false;
    for (const Rule& r : res.program.rules) {
        if (r == corpus::rule_o_defining(params)) {
            found = true;
        }
        CHECK(r != corpus::rule_o_choice(params));
    }
    CHECK(found);

    auto back = defining_to_choice(res.program, "o", "non_o");
    CHECK(back.program == pc);
}

TEST_CASE("choice_to_defining matches F1 up to renaming of private variables") {
    Program p = prog(
        ":- p(X), q(X).\n"
        "q(X) :- not p(X), r(X,Y).\n"
        "{p(X)} :- r(X,Z), s(Z).\n");
    auto res = choice_to_defining(p, "p", "q");
    CHECK(same_rule(res.program.rules[2], rule("p(X) :- not q(X), r(X,Z), s(Z).")));
}

TEST_CASE("choice_to_defining fails when F1 differs") {
    Program p = prog(
        ":- p(X), q(X).\n"
        "q(X) :- not p(X), r(X).\n"
        "{p(X)} :- s(X).\n");
    CHECK_THROWS_AS(choice_to_defining(p, "p", "q"), NotApplicable);
}

TEST_CASE("shifting the five-way disjunction by the two sample partitions") {
    Program samp = corpus::build_pisamp();
    auto res1 = shift_rules(samp, {{0, {{"a", "b"}, {"c", "d", "e"}}}});
    Program want1 = prog(
        "a | b :- not c, not d, not e(1).\n"
        "c | d | e(1) :- not a, not b.\n"
        "a :- b.\n"
        "b :- a.\n");
    REQUIRE(res1.program.rules.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(same_rule(res1.program.rules[i], want1.rules[i]));
    }

    auto res2 = shift_rules(samp, {{0, {{"a", "b"}, {"c"}, {"d", "e"}}}});
    Program want2 = prog(
        "a | b :- not c, not d, not e(1).\n"
        "c :- not a, not b, not d, not e(1).\n"
        "d | e(1) :- not a, not b, not c.\n"
        "a :- b.\n"
        "b :- a.\n");
    REQUIRE(res2.program.rules.size() == 5);
    for (size_t i = 0; i < 5; ++i) {
        CHECK(same_rule(res2.program.rules[i], want2.rules[i]));
    }

    CHECK(stablemodels::same_answer_sets(samp, res1.program, 0).same);
    CHECK(stablemodels::same_answer_sets(samp, res2.program, 0).same);
}

TEST_CASE("partitions splitting a component are rejected with the witness") {
    Program samp = corpus::build_pisamp();
    try {
        shift_rules(samp, {{0, {{"a"}, {"b"}, {"c"}, {"d"}, {"e"}}}});
        FAIL("expected IllegalPartition");
    } catch (const IllegalPartition& e) {
        CHECK(e.scc == std::vector<std::string>{"a", "b"});
    }
}

TEST_CASE("shift targets must be disjunctive and partitions must cover the head") {
    Program samp = corpus::build_pisamp();
    CHECK_THROWS_AS(shift_rules(samp, {{1, {{"a"}}}}), NotApplicable);
    CHECK_THROWS_AS(shift_rules(samp, {{0, {{"a", "b"}, {"c", "d"}}}}), PreconditionViolation);
    CHECK_THROWS_AS(shift_rules(samp, {{0, {{"a", "b"}, {"a", "c", "d", "e"}}}}),
                    PreconditionViolation);
}

TEST_CASE("the three projection variants of the running example") {
    Rule base = rule("s(X,Z) :- p(Z), q(X,Y), r(X,Y), t(X).");
    Signature sig = signature(prog("s(X,Z) :- p(Z), q(X,Y), r(X,Y), t(X)."));

    // alpha projection: alpha covers exactly the Y-literals
    auto alpha = project_rule(base, {"Y"}, {1, 2}, {}, "u", sig);
    CHECK(same_rule(alpha.main_rule, rule("s(X,Z) :- u(X), p(Z), t(X).")));
    CHECK(same_rule(alpha.definition_rule, rule("u(X) :- q(X,Y), r(X,Y).")));

    // beta projection: alpha enlarged by t(X), kept in the main rule
    auto beta = project_rule(base, {"Y"}, {1, 2, 3}, {3}, "u", sig);
    CHECK(same_rule(beta.main_rule, rule("s(X,Z) :- u(X), p(Z), t(X).")));
    CHECK(same_rule(beta.definition_rule, rule("u(X) :- q(X,Y), r(X,Y), t(X).")));

    // enlarged alpha without keeping t(X)
    auto third = project_rule(base, {"Y"}, {1, 2, 3}, {}, "u", sig);
    CHECK(same_rule(third.main_rule, rule("s(X,Z) :- u(X), p(Z).")));
    CHECK(same_rule(third.definition_rule, rule("u(X) :- q(X,Y), r(X,Y), t(X).")));
}

TEST_CASE("projection preconditions") {
    Rule base = rule("s(X,Z) :- p(Z), q(X,Y), r(X,Y), t(X).");
    Signature sig = signature(prog("s(X,Z) :- p(Z), q(X,Y), r(X,Y), t(X)."));
    CHECK_THROWS_AS(project_rule(base, {}, {1, 2}, {}, "u", sig), PreconditionViolation);
    CHECK_THROWS_AS(project_rule(base, {"X"}, {1, 2, 3}, {}, "u", sig), PreconditionViolation);
    CHECK_THROWS_AS(project_rule(base, {"Y"}, {1}, {}, "u", sig), PreconditionViolation);
    CHECK_THROWS_AS(project_rule(base, {"Y"}, {1, 2}, {1}, "u", sig), PreconditionViolation);
    CHECK_THROWS_AS(project_rule(base, {"Y"}, {1, 2}, {}, "q", sig), FreshnessViolation);
    Rule agg = rule("s(X) :- q(X,Y), 1 <= #count{W : r(W,Y)}.");
    Signature sig2 = signature(prog("s(X) :- q(X,Y), 1 <= #count{W : r(W,Y)}."));
    CHECK_THROWS_AS(project_rule(agg, {"Y"}, {0}, {}, "u", sig2), PreconditionViolation);
}

TEST_CASE("projection verifies as a conservative extension on the acceptance instance") {
    Program before = prog(
        "s(X,Z) :- p(Z), q(X,Y), r(X,Y), t(X).\n"
        "p(1). q(1,1). r(1,1). t(1). q(1,2). r(2,2).\n");
    Signature sig = signature(before);
    for (auto [alpha, alpha_prime] :
         std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>>{
             {{1, 2}, {}}, {{1, 2, 3}, {3}}, {{1, 2, 3}, {}}}) {
        auto projected = project_rule(before.rules[0], {"Y"}, alpha, alpha_prime, "u", sig);
        Program after;
        after.rules.push_back(projected.main_rule);
        after.rules.push_back(projected.definition_rule);
        for (size_t i = 1; i < before.rules.size(); ++i) {
            after.rules.push_back(before.rules[i]);
        }
        VerifyMode mode;
        mode.kind = VerifyMode::Kind::Conservative;
        mode.fresh_preds = {"u"};
        auto outcome = verify_rewrite(before, after, mode, 0);
        CHECK(outcome.pass);
    }
}

TEST_CASE("introduce_definition renames the negated condition") {
    Program p = prog("p :- not q.");
    auto res = introduce_definition(p, Atom::predicate("r"),
                                    {BodyElem::plain(Atom::predicate("q"), 1)});
    REQUIRE(res.program.rules.size() == 2);
    CHECK(res.program.rules[0] == rule("p :- r."));
    CHECK(res.program.rules[1] == rule("r :- not q."));
    auto cons = stablemodels::conservative_extension_check(res.program, p, 0);
    CHECK(cons.conservative);
}

TEST_CASE("introduce_definition with no occurrences only appends the defining rule") {
    Program p = prog("p :- not not q.");
    auto res = introduce_definition(p, Atom::predicate("r"),
                                    {BodyElem::plain(Atom::predicate("q"))});
    REQUIRE(res.program.rules.size() == 2);
    CHECK(res.program.rules[0] == p.rules[0]);
    CHECK(res.program.rules[1] == rule("r :- q."));
}

TEST_CASE("a definition occurrence under one negation is renamed too") {
    // the occurrence of the definition inside `not q` is a subformula
    // occurrence; the replacement keeps a conservative extension
    Program p = prog("p :- not q. {q}.");
    auto res = introduce_definition(p, Atom::predicate("r"),
                                    {BodyElem::plain(Atom::predicate("q"))});
    CHECK(res.program.rules[0] == rule("p :- not r."));
    CHECK(stablemodels::conservative_extension_check(res.program, p, 0).conservative);
}

TEST_CASE("introduce_definition rejects used names") {
    Program p = prog("p :- not q.");
    CHECK_THROWS_AS(
        introduce_definition(p, Atom::predicate("p"), {BodyElem::plain(Atom::predicate("q"), 1)}),
        FreshnessViolation);
}

TEST_CASE("denials are interchangeable when the program forces agreement") {
    Program p = prog("{p}. q :- p.");
    CHECK(denials_interchangeable(p, rule(":- p."), rule(":- p, p."), 0).interchangeable);
    CHECK(denials_interchangeable(p, rule(":- p."), rule(":- q."), 0).interchangeable);
    Program q = prog("{p}. {q}.");
    auto res = denials_interchangeable(q, rule(":- p."), rule(":- q."), 0);
    CHECK(!res.interchangeable);
    REQUIRE(res.witness.has_value());
}

TEST_CASE("verify_rewrite flags unequal programs") {
    auto outcome =
        verify_rewrite(prog("p."), prog("q."), VerifyMode{VerifyMode::Kind::Same, {}}, 0);
    CHECK(!outcome.pass);
    CHECK(!outcome.detail.empty());
}

TEST_CASE("pass outputs reparse cleanly") {
    corpus::InstanceParams params;
    std::vector<Program> outputs;
    outputs.push_back(subsumption_simplify(corpus::build_plan_choice(params)).program);
    outputs.push_back(choice_to_defining(corpus::build_plan_choice(params), "o", "non_o").program);
    outputs.push_back(shift_rules(corpus::build_pisamp(), {{0, {{"a", "b"}, {"c", "d", "e"}}}}).program);
    for (const Program& p : outputs) {
        CHECK(parser::parse_program(parser::format_program(p)) == p);
    }
}

TEST_CASE("eliminate_aggregate outputs are HT-equivalent to their inputs after grounding") {
    std::mt19937_64 rng(53);
    int checked = 0;
    while (checked < 40) {
        int bound = 1 + static_cast<int>(rng() % 2);
        std::string head = rng() % 2 ? "h" : "";
        std::string text = (head.empty() ? ":- " : head + " :- ") + std::to_string(bound) +
                           " <= #count{X : p(X,Y), not q(X)}, r(Y).";
        Rule r = rule(text.c_str());
        Rule out = eliminate_aggregate(r);
        Program before{{r}};
        Program after{{out}};
        Signature sig;
        sig.object_constants = {"c1", "c2"};
        if (!ht_equivalent_programs(before, after, sig)) {
            CHECK(false);
        }
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("choice_to_defining outputs are HT-equivalent to their inputs after grounding") {
    std::mt19937_64 rng(59);
    const char* f1_pool[] = {"r(X)", "r(X), s(X)", "s(X), not w(X)"};
    const char* f2_pool[] = {"", "w(X)", "not s(X)"};
    for (const char* f1 : f1_pool) {
        for (const char* f2 : f2_pool) {
            std::string choice = std::string("{p(X)} :- ") + f1 +
                                 (std::string(f2).empty() ? "" : std::string(", ") + f2) + ".";
            std::string text = std::string(":- p(X), q(X).\n") + "q(X) :- not p(X), " + f1 + ".\n" +
                               choice + "\n";
            Program before = prog(text.c_str());
            auto res = choice_to_defining(before, "p", "q");
            Signature sig;
            sig.object_constants = {"c1"};
            CHECK(ht_equivalent_programs(before, res.program, sig));
        }
    }
    (void)rng;
}
