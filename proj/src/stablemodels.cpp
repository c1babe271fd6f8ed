#include "aspforge/stablemodels.hpp"

#include "aspforge/fol.hpp"
#include "aspforge/parser.hpp"

#include <algorithm>
#include <functional>

namespace aspforge::stablemodels {

using fol::Formula;
using fol::FormulaPtr;

// --------------------------------------------------------------------------
// Traditional reduct.
// --------------------------------------------------------------------------

std::vector<BasicRule> reduct_traditional(const Program& ground_program, const Interpretation& x) {
    std::vector<BasicRule> out;
    for (const Rule& r : ground_program.rules) {
        if (r.head.kind == Head::Kind::Choice || r.head.atoms.size() > 1) {
            throw PreconditionViolation("reduct_traditional: rule is not traditional");
        }
        BasicRule br;
        if (!r.head.atoms.empty()) {
            const Atom& h = r.head.atoms[0];
            if (!h.is_ground() || h.kind != Atom::Kind::Predicate) {
                throw PreconditionViolation("reduct_traditional: head must be a ground atom or bot");
            }
            br.head = h;
        }
        for (const BodyElem& e : r.body) {
            if (e.kind != BodyElem::Kind::Plain) {
                throw PreconditionViolation("reduct_traditional: aggregates are not traditional");
            }
            if (!e.atom.is_ground()) {
                throw PreconditionViolation("reduct_traditional: body must be ground");
            }
            if (e.atom.kind == Atom::Kind::Truth) {
                if (e.negations == 1) {
                    br.body_false = true; // not top
                }
                continue;
            }
            if (e.atom.kind == Atom::Kind::Equality) {
                bool value = e.atom.args[0] == e.atom.args[1];
                if (e.negations % 2 == 1) {
                    value = !value;
                }
                if (!value) {
                    br.body_false = true;
                }
                continue;
            }
            bool in_x = x.holds(e.atom);
            switch (e.negations) {
                case 0:
                    br.body_atoms.push_back(e.atom);
                    break;
                case 1:
                    if (in_x) {
                        br.body_false = true; // replaced by bot
                    }
                    break;
                case 2:
                    if (!in_x) {
                        br.body_false = true;
                    }
                    break;
            }
        }
        out.push_back(std::move(br));
    }
    return out;
}

std::optional<Interpretation> least_model(const std::vector<BasicRule>& basic) {
    Interpretation m;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const BasicRule& r : basic) {
            if (r.body_false || !r.head) {
                continue;
            }
            bool fires = std::all_of(r.body_atoms.begin(), r.body_atoms.end(),
                                     [&](const Atom& a) { return m.holds(a); });
            if (fires && !m.holds(*r.head)) {
                m.true_atoms.insert(*r.head);
                changed = true;
            }
        }
    }
    for (const BasicRule& r : basic) {
        if (r.head || r.body_false) {
            continue;
        }
        bool fires = std::all_of(r.body_atoms.begin(), r.body_atoms.end(),
                                 [&](const Atom& a) { return m.holds(a); });
        if (fires) {
            return std::nullopt; // denial fired: no satisfying set exists
        }
    }
    return m;
}

std::vector<Interpretation> answer_sets_traditional(const Program& ground_program, int cap) {
    std::set<Atom> atom_set;
    for (const Rule& r : ground_program.rules) {
        for (const Atom& a : r.head.atoms) {
            atom_set.insert(a);
        }
        for (const BodyElem& e : r.body) {
            if (e.kind == BodyElem::Kind::Plain && e.atom.kind == Atom::Kind::Predicate) {
                atom_set.insert(e.atom);
            }
        }
    }
    std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
    if (static_cast<int>(atoms.size()) > cap) {
        throw CapExceeded("answer_sets_traditional: " + std::to_string(atoms.size()) +
                          " atoms exceed the cap");
    }
    std::vector<Interpretation> result;
    for (uint64_t mask = 0; mask < (uint64_t{1} << atoms.size()); ++mask) {
        Interpretation x;
        for (size_t i = 0; i < atoms.size(); ++i) {
            if (mask & (uint64_t{1} << i)) {
                x.true_atoms.insert(atoms[i]);
            }
        }
        auto lm = least_model(reduct_traditional(ground_program, x));
        if (lm && *lm == x) {
            result.push_back(std::move(x));
        }
    }
    return result;
}

// --------------------------------------------------------------------------
// General propositional reduct.
// --------------------------------------------------------------------------

namespace {

bool classically(const FormulaPtr& f, const Interpretation& x) {
    return fol::eval_classical(f, [&](const Atom& a) { return x.holds(a); });
}

} // namespace

FormulaPtr reduct_general(const FormulaPtr& formula, const Interpretation& x) {
    if (!classically(formula, x)) {
        return fol::f_bot();
    }
    switch (formula->kind) {
        case Formula::Kind::Bottom: // unreachable: bot is never satisfied
        case Formula::Kind::Atom:
            return formula;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> parts;
            parts.reserve(formula->parts.size());
            for (const FormulaPtr& p : formula->parts) {
                parts.push_back(reduct_general(p, x));
            }
            Formula out;
            out.kind = formula->kind;
            out.parts = std::move(parts);
            return std::make_shared<const Formula>(std::move(out));
        }
        case Formula::Kind::Implies:
            return fol::f_implies(reduct_general(formula->parts[0], x),
                                  reduct_general(formula->parts[1], x));
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            throw PreconditionViolation("reduct_general: formula is not ground");
    }
    return formula;
}

// --------------------------------------------------------------------------
// Compiled evaluation.
// --------------------------------------------------------------------------

namespace {

// Formula compiled against an atom index for mask-based evaluation.
struct Node {
    enum class Op { False, True, Var, And, Or, Implies };
    Op op = Op::False;
    int var = -1;
    std::vector<Node> children;
};

Node compile(const FormulaPtr& f, const std::map<Atom, int>& index) {
    Node n;
    switch (f->kind) {
        case Formula::Kind::Bottom:
            n.op = Node::Op::False;
            return n;
        case Formula::Kind::Atom:
            if (f->atom.kind == Atom::Kind::Truth) {
                n.op = Node::Op::True;
            } else if (f->atom.kind == Atom::Kind::Equality) {
                n.op = f->atom.args[0] == f->atom.args[1] ? Node::Op::True : Node::Op::False;
            } else {
                n.op = Node::Op::Var;
                n.var = index.at(f->atom);
            }
            return n;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            n.op = f->kind == Formula::Kind::And      ? Node::Op::And
                   : f->kind == Formula::Kind::Or     ? Node::Op::Or
                                                      : Node::Op::Implies;
            for (const FormulaPtr& p : f->parts) {
                n.children.push_back(compile(p, index));
            }
            return n;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            throw PreconditionViolation("oracle formulas must be ground");
    }
    return n;
}

bool eval_mask(const Node& n, uint64_t mask) {
    switch (n.op) {
        case Node::Op::False: return false;
        case Node::Op::True: return true;
        case Node::Op::Var: return (mask >> n.var) & 1;
        case Node::Op::And:
            for (const Node& c : n.children) {
                if (!eval_mask(c, mask)) {
                    return false;
                }
            }
            return true;
        case Node::Op::Or:
            for (const Node& c : n.children) {
                if (eval_mask(c, mask)) {
                    return true;
                }
            }
            return false;
        case Node::Op::Implies:
            return !eval_mask(n.children[0], mask) || eval_mask(n.children[1], mask);
    }
    return false;
}

// y |= (reduct of n w.r.t. x); callers must know that x |= n is not required
// here: the nested x-checks implement the maximal-unsatisfied-subformula rule.
bool eval_reduct(const Node& n, uint64_t x, uint64_t y) {
    if (!eval_mask(n, x)) {
        return false;
    }
    switch (n.op) {
        case Node::Op::False: return false; // unreachable
        case Node::Op::True: return true;
        case Node::Op::Var: return (y >> n.var) & 1;
        case Node::Op::And:
            for (const Node& c : n.children) {
                if (!eval_reduct(c, x, y)) {
                    return false;
                }
            }
            return true;
        case Node::Op::Or:
            for (const Node& c : n.children) {
                if (eval_mask(c, x) && eval_reduct(c, x, y)) {
                    return true;
                }
            }
            return false;
        case Node::Op::Implies:
            if (!eval_mask(n.children[0], x) || !eval_reduct(n.children[0], x, y)) {
                return true;
            }
            return eval_mask(n.children[1], x) && eval_reduct(n.children[1], x, y);
    }
    return false;
}

// HT satisfaction: here as `h`, there as `t`.
bool eval_ht(const Node& n, uint64_t h, uint64_t t) {
    switch (n.op) {
        case Node::Op::False: return false;
        case Node::Op::True: return true;
        case Node::Op::Var: return (h >> n.var) & 1;
        case Node::Op::And:
            for (const Node& c : n.children) {
                if (!eval_ht(c, h, t)) {
                    return false;
                }
            }
            return true;
        case Node::Op::Or:
            for (const Node& c : n.children) {
                if (eval_ht(c, h, t)) {
                    return true;
                }
            }
            return false;
        case Node::Op::Implies:
            if (eval_ht(n.children[0], h, t) && !eval_ht(n.children[1], h, t)) {
                return false;
            }
            return !eval_mask(n.children[0], t) || eval_mask(n.children[1], t);
    }
    return false;
}

// Decomposition of a ground theory into rule-shaped pieces for the
// possible-atom overapproximation.  Returns false when a conjunct does not
// look like a rule, in which case enumeration falls back to all atoms.
struct GroundRule {
    const Node* body = nullptr; // null = empty body
    std::vector<int> head_vars;
    bool head_bot = false;
};

bool decompose(const Node& n, std::vector<GroundRule>& out) {
    switch (n.op) {
        case Node::Op::True:
            return true;
        case Node::Op::False: {
            GroundRule r;
            r.head_bot = true;
            out.push_back(r);
            return true;
        }
        case Node::Op::Var: {
            GroundRule r;
            r.head_vars.push_back(n.var);
            out.push_back(r);
            return true;
        }
        case Node::Op::And: {
            for (const Node& c : n.children) {
                if (!decompose(c, out)) {
                    return false;
                }
            }
            return true;
        }
        case Node::Op::Or: {
            GroundRule r;
            for (const Node& c : n.children) {
                if (c.op != Node::Op::Var) {
                    return false;
                }
                r.head_vars.push_back(c.var);
            }
            out.push_back(r);
            return true;
        }
        case Node::Op::Implies: {
            GroundRule r;
            r.body = &n.children[0];
            const Node& h = n.children[1];
            if (h.op == Node::Op::False) {
                r.head_bot = true;
            } else if (h.op == Node::Op::Var) {
                r.head_vars.push_back(h.var);
            } else if (h.op == Node::Op::Or) {
                for (const Node& c : h.children) {
                    if (c.op != Node::Op::Var) {
                        return false;
                    }
                    r.head_vars.push_back(c.var);
                }
            } else if (h.op == Node::Op::True) {
                return true; // trivially satisfied conjunct
            } else {
                return false;
            }
            out.push_back(r);
            return true;
        }
    }
    return false;
}

// Monotone satisfiability overapproximation: atoms decide by membership in
// `possible`, every implication subformula (negation) counts as satisfiable.
bool may_fire(const Node& n, const std::vector<bool>& possible) {
    switch (n.op) {
        case Node::Op::False: return false;
        case Node::Op::True: return true;
        case Node::Op::Var: return possible[static_cast<size_t>(n.var)];
        case Node::Op::And:
            for (const Node& c : n.children) {
                if (!may_fire(c, possible)) {
                    return false;
                }
            }
            return true;
        case Node::Op::Or:
            for (const Node& c : n.children) {
                if (may_fire(c, possible)) {
                    return true;
                }
            }
            return false;
        case Node::Op::Implies:
            return true;
    }
    return false;
}

// Maps Var nodes onto compact candidate bit positions; atoms that cannot
// appear in any answer set become constants, so masks stay within 64 bits
// even for large ground theories.
void remap(Node& n, const std::vector<int>& compact) {
    if (n.op == Node::Op::Var) {
        int pos = compact[static_cast<size_t>(n.var)];
        if (pos < 0) {
            n.op = Node::Op::False;
            n.var = -1;
        } else {
            n.var = pos;
        }
        return;
    }
    for (Node& c : n.children) {
        remap(c, compact);
    }
}

struct CompiledTheory {
    std::vector<Atom> candidate_atoms; // subsequence of the theory atom order
    std::map<Atom, int> candidate_index;
    std::vector<Node> nodes; // Var indices refer to candidate positions
    bool rule_shaped = true;
};

CompiledTheory compile_theory(const ground::GroundTheory& theory) {
    std::map<Atom, int> full_index;
    for (size_t i = 0; i < theory.atoms.size(); ++i) {
        full_index[theory.atoms[i]] = static_cast<int>(i);
    }
    std::vector<Node> nodes;
    nodes.reserve(theory.formulas.size());
    for (const FormulaPtr& f : theory.formulas) {
        nodes.push_back(compile(f, full_index));
    }

    CompiledTheory ct;
    std::vector<GroundRule> rules;
    for (const Node& n : nodes) {
        if (!decompose(n, rules)) {
            ct.rule_shaped = false;
            break;
        }
    }
    std::vector<bool> possible(theory.atoms.size(), true);
    if (ct.rule_shaped) {
        possible.assign(theory.atoms.size(), false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const GroundRule& r : rules) {
                if (r.head_bot) {
                    continue;
                }
                if (r.body && !may_fire(*r.body, possible)) {
                    continue;
                }
                for (int v : r.head_vars) {
                    if (!possible[static_cast<size_t>(v)]) {
                        possible[static_cast<size_t>(v)] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    std::vector<int> compact(theory.atoms.size(), -1);
    for (size_t i = 0; i < theory.atoms.size(); ++i) {
        if (possible[i]) {
            compact[i] = static_cast<int>(ct.candidate_atoms.size());
            ct.candidate_index[theory.atoms[i]] = compact[i];
            ct.candidate_atoms.push_back(theory.atoms[i]);
        }
    }
    for (Node& n : nodes) {
        remap(n, compact);
    }
    ct.nodes = std::move(nodes);
    return ct;
}

Interpretation to_interpretation(uint64_t mask, const std::vector<Atom>& atoms) {
    Interpretation x;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if ((mask >> i) & 1) {
            x.true_atoms.insert(atoms[i]);
        }
    }
    return x;
}

bool minimal_for(const std::vector<Node>& nodes, uint64_t x) {
    if (x == 0) {
        return true;
    }
    for (uint64_t y = (x - 1) & x;; y = (y - 1) & x) {
        bool sat = true;
        for (const Node& n : nodes) {
            if (!eval_reduct(n, x, y)) {
                sat = false;
                break;
            }
        }
        if (sat) {
            return false;
        }
        if (y == 0) {
            break;
        }
    }
    return true;
}

} // namespace

std::vector<Interpretation> answer_sets(const ground::GroundTheory& theory, int cap) {
    CompiledTheory ct = compile_theory(theory);
    size_t k = ct.candidate_atoms.size();
    if (static_cast<int>(k) > cap || k > 62) {
        throw CapExceeded("answer_sets: " + std::to_string(k) +
                          " candidate atoms exceed the cap of " + std::to_string(cap));
    }
    std::vector<uint64_t> result_masks;
    for (uint64_t x = 0; x < (uint64_t{1} << k); ++x) {
        bool model = true;
        for (const Node& n : ct.nodes) {
            if (!eval_mask(n, x)) {
                model = false;
                break;
            }
        }
        if (model && minimal_for(ct.nodes, x)) {
            result_masks.push_back(x);
        }
    }
    // candidate positions follow the theory atom order, so ascending compact
    // masks are ascending full-atom bitmasks as well
    std::sort(result_masks.begin(), result_masks.end());
    std::vector<Interpretation> result;
    result.reserve(result_masks.size());
    for (uint64_t m : result_masks) {
        result.push_back(to_interpretation(m, ct.candidate_atoms));
    }
    return result;
}

bool is_answer_set(const ground::GroundTheory& theory, const Interpretation& x) {
    CompiledTheory ct = compile_theory(theory);
    if (ct.candidate_atoms.size() > 62) {
        throw CapExceeded("is_answer_set: too many candidate atoms");
    }
    uint64_t mask = 0;
    for (const Atom& a : x.true_atoms) {
        auto it = ct.candidate_index.find(a);
        if (it == ct.candidate_index.end()) {
            // either outside the theory or provably false in every answer set
            return false;
        }
        mask |= uint64_t{1} << it->second;
    }
    for (const Node& n : ct.nodes) {
        if (!eval_mask(n, mask)) {
            return false;
        }
    }
    return minimal_for(ct.nodes, mask);
}

// --------------------------------------------------------------------------
// HT oracles.
// --------------------------------------------------------------------------

bool ht_satisfies(const HTInterpretation& ht, const FormulaPtr& formula) {
    std::set<Atom> atom_set;
    fol::collect_atoms(formula, atom_set);
    std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
    std::map<Atom, int> index;
    for (size_t i = 0; i < atoms.size(); ++i) {
        index[atoms[i]] = static_cast<int>(i);
    }
    Node n = compile(formula, index);
    uint64_t h = 0, t = 0;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (ht.here.holds(atoms[i])) {
            h |= uint64_t{1} << i;
        }
        if (ht.there.holds(atoms[i])) {
            t |= uint64_t{1} << i;
        }
    }
    return eval_ht(n, h, t);
}

std::vector<HTInterpretation> ht_models(const FormulaPtr& formula, const std::vector<Atom>& atoms) {
    if (atoms.size() > 62) {
        throw CapExceeded("ht_models: too many atoms for mask enumeration");
    }
    std::map<Atom, int> index;
    for (size_t i = 0; i < atoms.size(); ++i) {
        index[atoms[i]] = static_cast<int>(i);
    }
    Node n = compile(formula, index);
    std::vector<HTInterpretation> out;
    size_t k = atoms.size();
    for (uint64_t t = 0; t < (uint64_t{1} << k); ++t) {
        for (uint64_t h = t;; h = (h - 1) & t) {
            if (eval_ht(n, h, t)) {
                out.push_back({to_interpretation(h, atoms), to_interpretation(t, atoms)});
            }
            if (h == 0) {
                break;
            }
        }
    }
    return out;
}

std::vector<HTInterpretation> ht_models(const FormulaPtr& formula) {
    std::set<Atom> atom_set;
    fol::collect_atoms(formula, atom_set);
    return ht_models(formula, std::vector<Atom>(atom_set.begin(), atom_set.end()));
}

EquivalenceResult strongly_equivalent_ground(const FormulaPtr& f, const FormulaPtr& g, int cap) {
    std::set<Atom> atom_set;
    fol::collect_atoms(f, atom_set);
    fol::collect_atoms(g, atom_set);
    std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
    if (static_cast<int>(atoms.size()) > cap || atoms.size() > 62) {
        throw CapExceeded("strongly_equivalent_ground: atom cap exceeded");
    }
    std::map<Atom, int> index;
    for (size_t i = 0; i < atoms.size(); ++i) {
        index[atoms[i]] = static_cast<int>(i);
    }
    Node nf = compile(f, index);
    Node ng = compile(g, index);
    size_t k = atoms.size();
    for (uint64_t t = 0; t < (uint64_t{1} << k); ++t) {
        for (uint64_t h = t;; h = (h - 1) & t) {
            if (eval_ht(nf, h, t) != eval_ht(ng, h, t)) {
                return {false, HTInterpretation{to_interpretation(h, atoms), to_interpretation(t, atoms)}};
            }
            if (h == 0) {
                break;
            }
        }
    }
    return {true, std::nullopt};
}

// --------------------------------------------------------------------------
// Program-level comparisons.
// --------------------------------------------------------------------------

namespace {

// The grounding explosion guard is a memory guard, not the enumeration cap:
// the candidate restriction inside answer_sets usually shrinks theories with
// many head atoms far below it.
constexpr int kGroundGuard = 4096;

ground::HerbrandUniverse joint_universe(const Program& p1, const Program& p2, int depth) {
    Signature sig = signature(p1);
    sig.merge(signature(p2));
    if (sig.object_constants.empty()) {
        sig.object_constants.insert("c0");
    }
    return ground::herbrand_universe(sig, depth);
}

} // namespace

SameAnswerSetsResult same_answer_sets(const Program& p1, const Program& p2, int depth, int cap) {
    ground::HerbrandUniverse u = joint_universe(p1, p2, depth);
    SameAnswerSetsResult res;
    res.left = answer_sets(ground::ground_theory_over(p1, u, kGroundGuard), cap);
    res.right = answer_sets(ground::ground_theory_over(p2, u, kGroundGuard), cap);
    std::set<Interpretation> l(res.left.begin(), res.left.end());
    std::set<Interpretation> r(res.right.begin(), res.right.end());
    res.same = l == r;
    if (!res.same) {
        for (const Interpretation& x : res.left) {
            if (!r.count(x)) {
                res.witness = x;
                break;
            }
        }
        if (!res.witness) {
            for (const Interpretation& x : res.right) {
                if (!l.count(x)) {
                    res.witness = x;
                    break;
                }
            }
        }
    }
    return res;
}

namespace {

ConservativeExtensionResult check_bijection(const std::vector<Interpretation>& ext_sets,
                                            const std::vector<Interpretation>& base_sets,
                                            const std::function<Interpretation(const Interpretation&)>& project) {
    ConservativeExtensionResult res;
    std::set<Interpretation> base(base_sets.begin(), base_sets.end());
    std::set<Interpretation> images;
    for (const Interpretation& x : ext_sets) {
        Interpretation img = project(x);
        if (!base.count(img)) {
            res.violation = "projected answer set is not an answer set of the base program";
            res.mapping.emplace_back(x, img);
            return res;
        }
        if (!images.insert(img).second) {
            res.violation = "projection is not injective on answer sets";
            res.mapping.emplace_back(x, img);
            return res;
        }
        res.mapping.emplace_back(x, std::move(img));
    }
    if (images.size() != base.size()) {
        res.violation = "projection is not surjective onto the base answer sets";
        return res;
    }
    res.conservative = true;
    return res;
}

} // namespace

ConservativeExtensionResult conservative_extension_check(const Program& ext, const Program& base,
                                                         int depth, int cap) {
    ground::HerbrandUniverse u = joint_universe(ext, base, depth);
    ground::GroundTheory ext_theory = ground::ground_theory_over(ext, u, kGroundGuard);
    ground::GroundTheory base_theory = ground::ground_theory_over(base, u, kGroundGuard);
    std::set<Atom> base_atoms(base_theory.atoms.begin(), base_theory.atoms.end());
    auto ext_sets = answer_sets(ext_theory, cap);
    auto base_sets = answer_sets(base_theory, cap);
    return check_bijection(ext_sets, base_sets, [&](const Interpretation& x) {
        Interpretation img;
        for (const Atom& a : x.true_atoms) {
            if (base_atoms.count(a)) {
                img.true_atoms.insert(a);
            }
        }
        return img;
    });
}

ConservativeExtensionResult conservative_extension_drop(const Program& ext, const Program& base,
                                                        const std::set<std::string>& drop_preds,
                                                        int depth, int cap) {
    ground::HerbrandUniverse u = joint_universe(ext, base, depth);
    auto ext_sets = answer_sets(ground::ground_theory_over(ext, u, kGroundGuard), cap);
    auto base_sets = answer_sets(ground::ground_theory_over(base, u, kGroundGuard), cap);
    return check_bijection(ext_sets, base_sets, [&](const Interpretation& x) {
        Interpretation img;
        for (const Atom& a : x.true_atoms) {
            if (a.kind != Atom::Kind::Predicate || !drop_preds.count(a.pred)) {
                img.true_atoms.insert(a);
            }
        }
        return img;
    });
}

} // namespace aspforge::stablemodels
