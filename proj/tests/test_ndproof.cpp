#include "aspforge/ndproof.hpp"

#include "aspforge/stablemodels.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace aspforge;
using namespace aspforge::ndproof;

namespace {

// the demorgan.ndp script, embedded so the tests run from any directory
const char* kFigureProof = R"(A1: ~(f & g)
1.  => ~f | ~~f                        axiom
2.  A1 => ~(f & g)                     axiom
3.  g => g                             axiom
4.  f => f                             axiom
5.  f, g => f & g                      andi 3 4
6.  A1, f, g => bot                    nege 2 5
7.  A1, g => ~f                        negi 6
8.  ~~f => ~~f                         axiom
9.  A1, g, ~~f => bot                  nege 7 8
10. A1, ~~f => ~g                      negi 9
11. A1, ~~f => ~f | ~g                 ori2 10
12. ~f => ~f                           axiom
13. ~f => ~f | ~g                      ori1 12
14. A1 => ~f | ~g                      ore 1 11 13
15. => ~(f & g) -> ~f | ~g             impi 14
)";

const char* kLemmaProof = R"(A1: ~(f & g)
1. A1 => ~(f & g)                      axiom
2. A1 => ~f | ~g                       demorgan 1
3. ~f => ~f                            axiom
4. ~g => ~g                            axiom
5. ~~f => ~~f                          axiom
6. ~~f, ~f => bot                      nege 3 5
7. ~~f, ~f => ~g                       c 6
8. A1, ~~f => ~g                       ore 2 4 7
9. A1 => ~~f -> ~g                     impi 8
)";

} // namespace

TEST_CASE("formula parser handles precedence and constants") {
    fol::FormulaPtr f = parse_formula("~p & q -> r | bot");
    REQUIRE(f->kind == fol::Formula::Kind::Implies);
    CHECK(f->parts[0]->kind == fol::Formula::Kind::And);
    CHECK(f->parts[1]->kind == fol::Formula::Kind::Or);
    CHECK(fol::equal(parse_formula("top"), fol::f_top()));
    CHECK(fol::equal(parse_formula("~~p"),
                     fol::f_not(fol::f_not(fol::f_atom(Atom::predicate("p"))))));
    CHECK_THROWS_AS(parse_formula("p &"), Error);
}

TEST_CASE("the figure proof parses and checks valid") {
    Proof proof = parse_proof(kFigureProof);
    REQUIRE(proof.lines.size() == 15);
    CheckResult res = check_proof(proof);
    CHECK(res.valid);
}

TEST_CASE("the lemma fragment needs the demorgan admission") {
    Proof proof = parse_proof(kLemmaProof);
    REQUIRE(proof.lines.size() == 9);
    CheckResult strict = check_proof(proof);
    CHECK(!strict.valid);
    CHECK(strict.line == 2);
    CheckOptions options;
    options.admit_demorgan = true;
    CHECK(check_proof(proof, options).valid);
}

TEST_CASE("one-line identity proofs are valid") {
    Proof proof = parse_proof("1. p => p axiom\n");
    CHECK(check_proof(proof).valid);
}

TEST_CASE("axiom schemata are matched by shape") {
    CHECK(check_proof(parse_proof("1. => top axiom\n")).valid);
    CHECK(check_proof(parse_proof("1. => ~(p & q) | ~~(p & q) axiom\n")).valid);
    CHECK(!check_proof(parse_proof("1. => ~p | ~~q axiom\n")).valid);
    CHECK(!check_proof(parse_proof("1. => p axiom\n")).valid);
    CHECK(!check_proof(parse_proof("1. p, q => p axiom\n")).valid);
}

TEST_CASE("dangling premise labels are parse errors") {
    CHECK_THROWS_AS(parse_proof("1. p => p axiom\n2. p => p w 7\n"), Error);
}

TEST_CASE("forward references are check failures") {
    Proof proof = parse_proof("1. p => p w 2\n2. p => p axiom\n");
    CheckResult res = check_proof(proof);
    CHECK(!res.valid);
    CHECK(res.line == 1);
}

TEST_CASE("the broken ore premise list from the acceptance mutation") {
    std::string text = kFigureProof;
    size_t pos = text.find("ore 1 11 13");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 11, "ore 1 11 12");
    Proof proof = parse_proof(text);
    CheckResult res = check_proof(proof);
    CHECK(!res.valid);
    CHECK(res.line == 14);
}

TEST_CASE("discharges are strict") {
    // impi without the assumption present must fail
    Proof missing = parse_proof("1. => top axiom\n2. => p -> top impi 1\n");
    CheckResult res = check_proof(missing);
    CHECK(!res.valid);
    CHECK(res.line == 2);
    // with weakening first it passes
    Proof weakened = parse_proof("1. => top axiom\n2. p => top w 1\n3. => p -> top impi 2\n");
    CHECK(check_proof(weakened).valid);
}

TEST_CASE("weakening only ever extends assumption sets") {
    Proof bad = parse_proof("1. p, q => p w 2\n2. p => p axiom\n");
    CHECK(!check_proof(bad).valid);
    Proof good = parse_proof("1. p => p axiom\n2. p, q => p w 1\n");
    CHECK(check_proof(good).valid);
}

TEST_CASE("valid closed proofs are HT-valid") {
    Proof proof = parse_proof(kFigureProof);
    REQUIRE(check_proof(proof).valid);
    const Sequent& last = proof.lines.back().sequent;
    REQUIRE(last.assumptions.empty());
    std::set<Atom> atom_set;
    fol::collect_atoms(last.conclusion, atom_set);
    std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
    auto models = stablemodels::ht_models(last.conclusion, atoms);
    size_t pairs = 1;
    for (size_t i = 0; i < atoms.size(); ++i) {
        pairs *= 3;
    }
    CHECK(models.size() == pairs);
}

TEST_CASE("the shipped proof scripts parse from disk when present") {
    for (const char* path : {"proofs/demorgan.ndp", "../proofs/demorgan.ndp"}) {
        std::ifstream in(path);
        if (!in) {
            continue;
        }
        std::ostringstream os;
        os << in.rdbuf();
        CHECK(check_proof(parse_proof(os.str())).valid);
        return;
    }
    MESSAGE("proof scripts not reachable from the test working directory; skipped");
}
