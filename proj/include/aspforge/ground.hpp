#ifndef ASPFORGE_GROUND_HPP
#define ASPFORGE_GROUND_HPP

#include "aspforge/ast.hpp"
#include "aspforge/formula.hpp"

namespace aspforge::ground {

struct HerbrandUniverse {
    std::vector<Term> terms; // deterministic order, closed up to `depth`
    int depth = 0;
};

// All ground terms of nesting depth <= depth over the signature's constants
// and function symbols.  Depth 0 keeps object constants only.  Throws when
// the signature has no object constant.
HerbrandUniverse herbrand_universe(const Signature& sig, int depth);

struct GroundTheory {
    std::vector<Atom> atoms;              // sorted, every atom of `formulas`
    std::vector<fol::FormulaPtr> formulas; // variable-free, one per rule
    HerbrandUniverse universe;
};

inline constexpr int kDefaultDepth = 1;
inline constexpr int kDefaultExhaustiveCap = 16;
inline constexpr int kDefaultStreamingCap = 24;

// Instantiates the FOL representation of `program` over its Herbrand
// universe: forall becomes a finite conjunction, exists a finite disjunction;
// ground equalities are evaluated syntactically and the result simplified.
// Throws CapExceeded when more than `atom_cap` distinct atoms remain.
GroundTheory ground_theory(const Program& program, int depth = kDefaultDepth,
                           int atom_cap = kDefaultStreamingCap);

// Same, but over an explicitly supplied universe (used for joint groundings).
GroundTheory ground_theory_over(const Program& program, const HerbrandUniverse& universe,
                                int atom_cap = kDefaultStreamingCap);

// Instantiates one formula over a universe, folding ground equalities.
fol::FormulaPtr instantiate(const fol::FormulaPtr& formula, const HerbrandUniverse& universe);

// Builds a theory directly from variable-free formulas (test oracles).
GroundTheory theory_of_formulas(std::vector<fol::FormulaPtr> formulas, int atom_cap = kDefaultStreamingCap);

} // namespace aspforge::ground

#endif
