#ifndef ASPFORGE_DEPGRAPH_HPP
#define ASPFORGE_DEPGRAPH_HPP

#include "aspforge/ast.hpp"
#include "aspforge/formula.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace aspforge::depgraph {

struct Occurrence {
    std::string predicate;
    bool strictly_positive = false; // zero enclosing implication antecedents
    bool positive = false;          // even number of enclosing antecedents
    bool negated = false;           // inside some subformula ~F
    std::vector<int> path;          // child indices from the root
};

// Classifies every predicate-atom occurrence of the formula.
std::vector<Occurrence> classify_occurrences(const fol::FormulaPtr& formula);

// All implications occurring strictly positively, outermost quantifiers
// stripped.
std::vector<fol::FormulaPtr> fol_rules(const fol::FormulaPtr& formula);

struct DependencyGraph {
    std::set<std::string> vertices;
    std::set<std::pair<std::string, std::string>> edges;
};

// Edge p -> q iff some FOL rule G -> H of the formula has p strictly positive
// in H and q positive nonnegated in G.
DependencyGraph dependency_graph(const fol::FormulaPtr& formula,
                                 const std::set<std::string>& preds);

// Dependency graph of a program relative to the predicates occurring in it.
DependencyGraph dependency_graph(const Program& program);

// SCC partition in canonical order: components sorted by lexicographically
// smallest member, members sorted within each component.
std::vector<std::vector<std::string>> sccs(const DependencyGraph& graph);

std::string to_dot(const DependencyGraph& graph);

} // namespace aspforge::depgraph

#endif
