#include "aspforge/ground.hpp"

#include "aspforge/actionlang.hpp"
#include "aspforge/corpus.hpp"
#include "aspforge/fol.hpp"
#include "aspforge/parser.hpp"

#include <doctest.h>

using namespace aspforge;
using namespace aspforge::ground;

TEST_CASE("depth-0 universes are the object constants") {
    Signature sig;
    sig.object_constants = {"a", "b"};
    HerbrandUniverse u = herbrand_universe(sig, 0);
    REQUIRE(u.terms.size() == 2);
    CHECK(u.terms[0] == Term::constant("a"));
    CHECK(u.terms[1] == Term::constant("b"));
}

TEST_CASE("depth-1 universes enumerate one application of each functor") {
    Signature sig;
    sig.object_constants = {"b0", "table"};
    sig.function_symbols = {{"on", 2}};
    HerbrandUniverse u = herbrand_universe(sig, 1);
    std::vector<Term> want = {
        Term::constant("b0"),
        Term::constant("table"),
        Term::compound("on", {Term::constant("b0"), Term::constant("b0")}),
        Term::compound("on", {Term::constant("b0"), Term::constant("table")}),
        Term::compound("on", {Term::constant("table"), Term::constant("b0")}),
        Term::compound("on", {Term::constant("table"), Term::constant("table")}),
    };
    CHECK(u.terms == want);
}

TEST_CASE("universes require an object constant") {
    CHECK_THROWS_AS(herbrand_universe(Signature{}, 0), Error);
}

TEST_CASE("grounding is monotone in depth") {
    Signature sig;
    sig.object_constants = {"a"};
    sig.function_symbols = {{"f", 1}};
    HerbrandUniverse u0 = herbrand_universe(sig, 0);
    HerbrandUniverse u1 = herbrand_universe(sig, 1);
    HerbrandUniverse u2 = herbrand_universe(sig, 2);
    CHECK(u0.terms.size() < u1.terms.size());
    CHECK(u1.terms.size() < u2.terms.size());
    for (const Term& t : u0.terms) {
        CHECK(std::find(u1.terms.begin(), u1.terms.end(), t) != u1.terms.end());
    }
    for (const Term& t : u1.terms) {
        CHECK(std::find(u2.terms.begin(), u2.terms.end(), t) != u2.terms.end());
    }
}

TEST_CASE("a fact and a unary rule ground to the expected formulas") {
    Program p = parser::parse_program("p(a). q(X) :- p(X).");
    GroundTheory theory = ground_theory(p, 0);
    REQUIRE(theory.formulas.size() == 2);
    fol::FormulaPtr pa = fol::f_atom(Atom::predicate("p", {Term::constant("a")}));
    fol::FormulaPtr qa = fol::f_atom(Atom::predicate("q", {Term::constant("a")}));
    CHECK(fol::equal(theory.formulas[0], pa));
    CHECK(fol::equal(theory.formulas[1], fol::f_implies(pa, qa)));
    CHECK(theory.atoms.size() == 2);
}

TEST_CASE("ground equalities fold to truth values") {
    Program p = parser::parse_program("q(X) :- p(X), X = a. r(X) :- p(X), X != X.");
    GroundTheory theory = ground_theory(p, 0);
    // over universe {a}: the equality in rule 1 folds away, rule 2 trivializes
    CHECK(fol::equal(theory.formulas[0],
                     fol::f_implies(fol::f_atom(Atom::predicate("p", {Term::constant("a")})),
                                    fol::f_atom(Atom::predicate("q", {Term::constant("a")})))));
    CHECK(fol::is_top(*theory.formulas[1]));
    for (const Atom& a : theory.atoms) {
        CHECK(a.pred != "r");
    }
}

TEST_CASE("a bound-2 aggregate over one constant trivializes its denial") {
    Program p = parser::parse_program(":- 2 <= #count{A : o(A)}. o(a1) :- m.");
    GroundTheory theory = ground_theory(p, 0);
    // the only instantiation pair is (a1, a1); its inequality conjunct is bot
    CHECK(fol::is_top(*theory.formulas[0]));
}

TEST_CASE("water simp_1 grounds to nine atoms") {
    Program simp = actionlang::translate_simp(corpus::build_water(), 1);
    GroundTheory theory = ground_theory(simp, 0, 256);
    CHECK(theory.atoms.size() == 9);
}

TEST_CASE("atom caps guard grounding explosions") {
    Program p = parser::parse_program("q(X,Y) :- p(X), p(Y). p(a). p(b). p(c).");
    CHECK_THROWS_AS(ground_theory(p, 0, 5), CapExceeded);
}

TEST_CASE("grounding a union concatenates the formula lists") {
    Program p1 = parser::parse_program("p(a). q(X) :- p(X).");
    Program p2 = parser::parse_program("r(b). s(X) :- r(X), p(X).");
    Program both = p1;
    both.rules.insert(both.rules.end(), p2.rules.begin(), p2.rules.end());
    Signature sig = signature(both);
    HerbrandUniverse u = herbrand_universe(sig, 0);
    GroundTheory t_both = ground_theory_over(both, u, 256);
    GroundTheory t1 = ground_theory_over(p1, u, 256);
    GroundTheory t2 = ground_theory_over(p2, u, 256);
    REQUIRE(t_both.formulas.size() == t1.formulas.size() + t2.formulas.size());
    for (size_t i = 0; i < t1.formulas.size(); ++i) {
        CHECK(fol::equal(t_both.formulas[i], t1.formulas[i]));
    }
    for (size_t i = 0; i < t2.formulas.size(); ++i) {
        CHECK(fol::equal(t_both.formulas[t1.formulas.size() + i], t2.formulas[i]));
    }
}

TEST_CASE("quantifier instantiation expands over the whole universe") {
    Program p = parser::parse_program("q(X) :- not p(X). r. p(a).");
    GroundTheory theory = ground_theory(p, 0);
    // variables are unrestricted: X ranges over every constant
    REQUIRE(theory.formulas[0]->kind == fol::Formula::Kind::Implies); // single constant: unwrapped
    Program two = parser::parse_program("q(X) :- not p(X). p(a). p(b).");
    GroundTheory t2 = ground_theory(two, 0);
    CHECK(t2.formulas[0]->kind == fol::Formula::Kind::And);
    CHECK(t2.formulas[0]->parts.size() == 2);
}
