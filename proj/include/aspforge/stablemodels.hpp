#ifndef ASPFORGE_STABLEMODELS_HPP
#define ASPFORGE_STABLEMODELS_HPP

#include "aspforge/ast.hpp"
#include "aspforge/formula.hpp"
#include "aspforge/ground.hpp"

#include <cstdint>
#include <optional>

namespace aspforge::stablemodels {

struct Interpretation {
    std::set<Atom> true_atoms;

    bool holds(const Atom& a) const { return true_atoms.count(a) != 0; }

    friend auto operator<=>(const Interpretation&, const Interpretation&) = default;
};

struct HTInterpretation {
    Interpretation here;  // subset of there
    Interpretation there;

    friend auto operator<=>(const HTInterpretation&, const HTInterpretation&) = default;
};

// --------------------------------------------------------------------------
// Reducts.
// --------------------------------------------------------------------------

// A rule of a basic program after the traditional reduct: negation-free.
struct BasicRule {
    std::optional<Atom> head; // nullopt encodes bot
    std::vector<Atom> body_atoms;
    bool body_false = false; // some not/not-not literal reduced to bot
};

// The traditional two-step reduct: `not not a` becomes top when a is in X
// and bot otherwise; `not a` becomes bot when a is in X and top otherwise.
// Every rule must be ground and traditional: single-atom-or-bot head, plain
// body literals with at most double negation.
std::vector<BasicRule> reduct_traditional(const Program& ground_program, const Interpretation& x);

// Least model of a basic program, or nullopt when the definite fragment's
// least model fires a denial.
std::optional<Interpretation> least_model(const std::vector<BasicRule>& basic);

// Answer sets computed via the traditional reduct (X answer set iff X is the
// least model of the reduct and all denials hold).
std::vector<Interpretation> answer_sets_traditional(const Program& ground_program, int cap);

// Propositional-theory reduct on ground formulas: every maximal subformula
// not classically satisfied by X becomes bot, satisfied atoms stay.
fol::FormulaPtr reduct_general(const fol::FormulaPtr& formula, const Interpretation& x);

// --------------------------------------------------------------------------
// Answer-set and HT oracles.
// --------------------------------------------------------------------------

// All X with X |= reduct_general(theory, X) and no Y strictly inside X
// satisfying it, ordered by atom-set bitmask over the theory's atom order.
// Candidate enumeration is narrowed to atoms with a head occurrence whose
// body can possibly fire (an answer-set-preserving restriction for
// rule-shaped theories); the cap applies to the narrowed candidate count.
std::vector<Interpretation> answer_sets(const ground::GroundTheory& theory,
                                        int cap = ground::kDefaultExhaustiveCap);

bool is_answer_set(const ground::GroundTheory& theory, const Interpretation& x);

// All HT pairs (H, T) over `atoms` satisfying a ground formula.
std::vector<HTInterpretation> ht_models(const fol::FormulaPtr& formula,
                                        const std::vector<Atom>& atoms);
std::vector<HTInterpretation> ht_models(const fol::FormulaPtr& formula);

bool ht_satisfies(const HTInterpretation& ht, const fol::FormulaPtr& formula);

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<HTInterpretation> witness; // HT pair satisfying exactly one side
};

// HT-model equality over the union atom set of both formulas.
EquivalenceResult strongly_equivalent_ground(const fol::FormulaPtr& f, const fol::FormulaPtr& g,
                                             int cap = ground::kDefaultExhaustiveCap);

struct SameAnswerSetsResult {
    bool same = false;
    std::optional<Interpretation> witness; // answer set of exactly one program
    std::vector<Interpretation> left, right;
};

// Compares the answer sets of both programs grounded over the joint universe.
SameAnswerSetsResult same_answer_sets(const Program& p1, const Program& p2,
                                      int depth = ground::kDefaultDepth,
                                      int cap = ground::kDefaultExhaustiveCap);

struct ConservativeExtensionResult {
    bool conservative = false;
    std::vector<std::pair<Interpretation, Interpretation>> mapping; // ext -> base
    std::string violation;
};

// Checks that X -> X /\ ground-atoms(base) is a bijection between the answer
// sets of `ext` and of `base` (both grounded over ext's universe).
ConservativeExtensionResult conservative_extension_check(const Program& ext, const Program& base,
                                                         int depth = ground::kDefaultDepth,
                                                         int cap = ground::kDefaultExhaustiveCap);

// Same check with the projection given by dropping atoms of the listed
// predicates from each answer set of `ext`.
ConservativeExtensionResult conservative_extension_drop(const Program& ext, const Program& base,
                                                        const std::set<std::string>& drop_preds,
                                                        int depth = ground::kDefaultDepth,
                                                        int cap = ground::kDefaultExhaustiveCap);

} // namespace aspforge::stablemodels

#endif
