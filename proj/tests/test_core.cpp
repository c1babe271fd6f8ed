#include "aspforge/ast.hpp"
#include "aspforge/corpus.hpp"
#include "aspforge/parser.hpp"

#include <doctest.h>

#include <random>

using namespace aspforge;

namespace {

Program parse(const char* text) { return parser::parse_program(text); }

} // namespace

TEST_CASE("signature collects constants, functions and predicates") {
    Program p = parse("p(a). q(X) :- p(X).");
    Signature sig = signature(p);
    CHECK(sig.object_constants == std::set<std::string>{"a"});
    CHECK(sig.function_symbols.empty());
    CHECK(sig.predicates == std::map<std::string, int>{{"p", 1}, {"q", 1}});
}

TEST_CASE("signature of the empty program is empty") {
    Signature sig = signature(Program{});
    CHECK(sig.object_constants.empty());
    CHECK(sig.function_symbols.empty());
    CHECK(sig.predicates.empty());
}

TEST_CASE("plan-choice signature includes the module predicates") {
    corpus::InstanceParams params;
    Signature sig = signature(corpus::build_plan_choice(params));
    for (const char* p : {"success", "goal", "step", "o", "non_o", "action"}) {
        CHECK(sig.predicates.count(p));
    }
}

TEST_CASE("signature distributes over program union") {
    std::mt19937_64 rng(7);
    const char* texts[] = {"p(a).", "q(b) :- p(b).", "r(X) :- q(X), not p(X).", "s(f(a))."};
    for (int round = 0; round < 20; ++round) {
        Program p1, p2;
        for (const char* t : texts) {
            Program r = parse(t);
            if (rng() % 2) {
                p1.rules.push_back(r.rules[0]);
            }
            if (rng() % 2) {
                p2.rules.push_back(r.rules[0]);
            }
        }
        Program both = p1;
        both.rules.insert(both.rules.end(), p2.rules.begin(), p2.rules.end());
        Signature merged = signature(p1);
        merged.merge(signature(p2));
        CHECK(signature(both) == merged);
    }
}

TEST_CASE("classify_rule partitions rules") {
    CHECK(classify_rule(parser::parse_rule(":- o(A,I), non_o(A,I).")) == RuleClass::Denial);
    CHECK(classify_rule(parser::parse_rule(
              "{o(A,I)} :- action(A), step(I), not goal(I), I != n.")) == RuleClass::ChoiceRule);
    CHECK(classify_rule(parser::parse_rule("a | b :- c.")) == RuleClass::DisjunctiveRule);
    CHECK(classify_rule(parser::parse_rule("p(a).")) == RuleClass::Defining);
}

TEST_CASE("subsumption compares heads and body multisets") {
    corpus::InstanceParams params;
    Rule defining = corpus::rule_non_o_defining(params);
    Rule subsumed = corpus::rule_non_o_subsumed(params);
    CHECK(subsumes(defining, subsumed));
    CHECK(!subsumes(subsumed, defining));

    Rule self = parser::parse_rule("a :- b, not c.");
    CHECK(subsumes(self, self));

    CHECK(!subsumes(parser::parse_rule("a :- b."), parser::parse_rule("a :- c.")));
    CHECK(subsumes(parser::parse_rule(":- p."), parser::parse_rule(":- p, p.")));
    CHECK(!subsumes(parser::parse_rule(":- p, p."), parser::parse_rule(":- p.")));
}

TEST_CASE("subsumption is transitive on random rule chains") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 50; ++round) {
        std::vector<BodyElem> extras;
        for (int i = 0; i < 4; ++i) {
            extras.push_back(BodyElem::plain(
                Atom::predicate("e" + std::to_string(rng() % 5)), static_cast<int>(rng() % 2)));
        }
        Rule base = parser::parse_rule("h :- b0.");
        Rule mid = base;
        mid.body.insert(mid.body.end(), extras.begin(), extras.begin() + 2);
        Rule big = mid;
        big.body.insert(big.body.end(), extras.begin() + 2, extras.end());
        CHECK(subsumes(base, mid));
        CHECK(subsumes(mid, big));
        CHECK(subsumes(base, big));
    }
}

TEST_CASE("terminal ranks follow the block/loc example") {
    Program p = parse("block(b0). block(b1). loc(X) :- block(X). loc(table).");
    CHECK(terminal_rank(p, "block") == 0);
    CHECK(terminal_rank(p, "loc") == 1);
}

TEST_CASE("self-dependent predicates are not terminal") {
    Program p = parse("p :- p.");
    CHECK(!terminal_rank(p, "p").has_value());
}

TEST_CASE("o is terminal in plan-instance plus plan-choice") {
    corpus::InstanceParams params;
    Program combined = corpus::build_plan_choice(params);
    Program inst = corpus::build_plan_instance(params);
    combined.rules.insert(combined.rules.end(), inst.rules.begin(), inst.rules.end());
    CHECK(terminal_rank(combined, "action") == 0);
    CHECK(terminal_rank(combined, "step") == 0);
    CHECK(terminal_rank(combined, "o").has_value());
}

TEST_CASE("rank zero means every defining rule is a fact") {
    Program p = parse("block(b0). block(b1). loc(X) :- block(X). loc(table).");
    for (const auto& [pred, _] : signature(p).predicates) {
        if (terminal_rank(p, pred) == 0) {
            for (const Rule& r : p.rules) {
                for (const Atom& a : r.head.atoms) {
                    if (a.kind == Atom::Kind::Predicate && a.pred == pred) {
                        CHECK(r.body.empty());
                    }
                }
            }
        }
    }
}

TEST_CASE("aggregates and double negation break simplicity") {
    CHECK(is_simple_rule(parser::parse_rule("a :- b, not c.")));
    CHECK(!is_simple_rule(parser::parse_rule("a :- not not b.")));
    CHECK(!is_simple_rule(parser::parse_rule("a :- 1 <= #count{X : p(X)}.")));
}
