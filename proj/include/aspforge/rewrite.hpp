#ifndef ASPFORGE_REWRITE_HPP
#define ASPFORGE_REWRITE_HPP

#include "aspforge/ast.hpp"
#include "aspforge/stablemodels.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aspforge::rewrite {

struct IllegalPartition : Error {
    std::vector<std::string> scc; // component split across partition members

    IllegalPartition(std::string what, std::vector<std::string> scc_)
        : Error(std::move(what)), scc(std::move(scc_)) {}
};

struct VerifyOutcome {
    bool pass = false;
    std::string mode;   // "same" or "conservative:<preds>"
    int depth = 1;
    std::string detail; // witness description on failure
};

struct RewriteReport {
    std::string pass;
    std::vector<Rule> removed;
    std::vector<Rule> added;
    bool applicable = true;
    std::string detail;
    std::optional<VerifyOutcome> oracle;
    std::vector<std::string> fresh_symbols;
};

struct RewriteResult {
    Program program;
    RewriteReport report;
};

// Removes every rule subsumed by some other kept rule (the first of a group
// of mutually subsuming rules survives).
RewriteResult subsumption_simplify(const Program& program);

// Inverse direction: appends a rule subsumed by `r` (body extended by
// `extra_body`).
RewriteResult subsumption_add(const Program& program, const Rule& r,
                              const std::vector<BodyElem>& extra_body);

// Replaces a non-negated count aggregate whose aggregate variables occur
// nowhere else in the rule by `bound` renamed copies of its condition
// literals plus pairwise inequalities.  Throws NotApplicable when the side
// condition fails, the aggregate is negated, or the aggregate has more than
// one aggregate variable (a tuple inequality is not a body literal).
Rule eliminate_aggregate(const Rule& rule);

// `1 <= #count{x : F}` <-> condition literals with x as ordinary variables.
Rule unwrap_singleton_count(const Rule& rule);
Rule wrap_singleton_count(const Rule& rule);

// Replaces the choice rule of the pattern
//   :- p(x), q(x).     q(x) :- not p(x), F1.     {p(x)} :- F1, F2.
// by  p(x) :- not q(x), F1, F2.   F1 is matched up to a renaming of
// non-x variables.  defining_to_choice inverts the step.
RewriteResult choice_to_defining(const Program& program, const std::string& p,
                                 const std::string& q);
RewriteResult defining_to_choice(const Program& program, const std::string& p,
                                 const std::string& q);

// One shifting target: a disjunctive rule index plus a partition of its
// distinct head predicates.
struct ShiftTarget {
    size_t rule_index = 0;
    std::vector<std::vector<std::string>> partition;
};

// Replaces each target rule by one rule per partition member, moving the
// other disjuncts into the body under `not`.  Rejects partitions that split
// a strongly connected component of the program's dependency graph.
RewriteResult shift_rules(const Program& program, const std::vector<ShiftTarget>& targets);

struct ProjectionResult {
    Rule main_rule;
    Rule definition_rule;
};

// Projects the variables `x` out of `rule` using the fresh predicate `u`:
// main rule H <- (Body \ alpha) u alpha' u {u(y)}, definition u(y) <- alpha.
// `alpha`/`alpha_prime` index plain body literals of `rule`.
ProjectionResult project_rule(const Rule& rule, const std::vector<std::string>& x,
                              const std::vector<size_t>& alpha,
                              const std::vector<size_t>& alpha_prime, const std::string& u,
                              const Signature& program_signature);

// Replaces every body occurrence of `def` (a conjunction of body elements)
// by the fresh atom `q` and appends the defining rule q <- def.  A singleton
// definition also matches under one extra negation.
RewriteResult introduce_definition(const Program& program, const Atom& q,
                                   const std::vector<BodyElem>& def);

struct DenialInterchangeResult {
    bool interchangeable = false;
    std::optional<stablemodels::Interpretation> witness;
};

// Empirical interchangeability of two denials relative to `program`: every
// answer set of the grounded program (with both denials removed) must give
// the denials' FOL representations the same classical truth value.
DenialInterchangeResult denials_interchangeable(const Program& program, const Rule& r,
                                                const Rule& r2, int depth = 1,
                                                int cap = ground::kDefaultExhaustiveCap);

struct VerifyMode {
    enum class Kind { Same, Conservative };
    Kind kind = Kind::Same;
    std::set<std::string> fresh_preds; // Conservative only
};

VerifyOutcome verify_rewrite(const Program& before, const Program& after, const VerifyMode& mode,
                             int depth = 1, int cap = ground::kDefaultExhaustiveCap);

} // namespace aspforge::rewrite

#endif
