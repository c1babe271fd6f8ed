#ifndef ASPFORGE_NDPROOF_HPP
#define ASPFORGE_NDPROOF_HPP

#include "aspforge/ast.hpp"
#include "aspforge/formula.hpp"

#include <string>
#include <vector>

namespace aspforge::ndproof {

// Propositional formulas reuse the fol tree with binary And/Or nodes and
// 0-ary predicate atoms.  Syntax: atoms, `bot`, `top`, `~F`, `F & G`,
// `F | G`, `F -> G` (right associative), parentheses.
fol::FormulaPtr parse_formula(std::string_view text);

struct Sequent {
    std::vector<fol::FormulaPtr> assumptions; // kept deduplicated
    fol::FormulaPtr conclusion;
};

struct Justification {
    // axiom | andi | ande1 | ande2 | ori1 | ori2 | ore | impi | impe |
    // negi | nege | c | w | demorgan
    std::string rule;
    std::vector<int> premises; // 1-based line labels
};

struct ProofLine {
    int label = 0;
    Sequent sequent;
    Justification justification;
};

struct Proof {
    std::vector<ProofLine> lines;
};

// Script format, one proof line per text line:
//   <label>. <assumptions> => <formula>   <rule> <premises>
// plus assumption abbreviations `Name: <formula>` usable in assumption lists.
// Comments start with `%`.  A premise label that exists nowhere in the script
// is a parse error.
Proof parse_proof(std::string_view text);

struct CheckResult {
    bool valid = false;
    int line = 0;        // first invalid line label, 0 when valid
    std::string reason;
};

struct CheckOptions {
    bool admit_demorgan = false; // admits one-step De Morgan rewriting
};

// Validates every line: axioms must match F => F, => top or the weak
// excluded middle => ~F | ~~F; rule applications must match the inference
// schemata exactly, including assumption-set unions and discharges.
CheckResult check_proof(const Proof& proof, const CheckOptions& options = {});

std::string format_sequent(const Sequent& s);

} // namespace aspforge::ndproof

#endif
