#include "aspforge/ground.hpp"

#include "aspforge/fol.hpp"

#include <algorithm>

namespace aspforge::ground {

using fol::Formula;
using fol::FormulaPtr;

HerbrandUniverse herbrand_universe(const Signature& sig, int depth) {
    if (sig.object_constants.empty()) {
        throw Error("herbrand_universe: signature has no object constant");
    }
    HerbrandUniverse u;
    u.depth = depth;
    for (const std::string& c : sig.object_constants) {
        u.terms.push_back(Term::constant(c));
    }
    std::vector<Term> previous = u.terms;
    for (int d = 1; d <= depth; ++d) {
        std::vector<Term> layer;
        for (const auto& [f, arity] : sig.function_symbols) {
            std::vector<size_t> idx(static_cast<size_t>(arity), 0);
            while (true) {
                std::vector<Term> args;
                args.reserve(idx.size());
                for (size_t i : idx) {
                    args.push_back(previous[i]);
                }
                layer.push_back(Term::compound(f, std::move(args)));
                // advance odometer (last argument fastest)
                int k = arity - 1;
                while (k >= 0) {
                    if (++idx[static_cast<size_t>(k)] < previous.size()) {
                        break;
                    }
                    idx[static_cast<size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) {
                    break;
                }
            }
        }
        std::vector<Term> next = u.terms;
        for (Term& t : layer) {
            if (std::find(next.begin(), next.end(), t) == next.end()) {
                next.push_back(std::move(t));
            }
        }
        previous = next;
        u.terms = std::move(next);
    }
    return u;
}

namespace {

// bot/top folding that is sound in the logic of here-and-there.
FormulaPtr simplify_and(std::vector<FormulaPtr> parts) {
    std::vector<FormulaPtr> out;
    for (FormulaPtr& p : parts) {
        if (p->kind == Formula::Kind::Bottom) {
            return fol::f_bot();
        }
        if (fol::is_top(*p)) {
            continue;
        }
        out.push_back(std::move(p));
    }
    return fol::f_and(std::move(out));
}

FormulaPtr simplify_or(std::vector<FormulaPtr> parts) {
    std::vector<FormulaPtr> out;
    for (FormulaPtr& p : parts) {
        if (fol::is_top(*p)) {
            return fol::f_top();
        }
        if (p->kind == Formula::Kind::Bottom) {
            continue;
        }
        out.push_back(std::move(p));
    }
    return fol::f_or(std::move(out));
}

FormulaPtr simplify_implies(FormulaPtr lhs, FormulaPtr rhs) {
    if (lhs->kind == Formula::Kind::Bottom) {
        return fol::f_top();
    }
    if (fol::is_top(*rhs)) {
        return fol::f_top();
    }
    if (fol::is_top(*lhs)) {
        return rhs;
    }
    return fol::f_implies(std::move(lhs), std::move(rhs));
}

FormulaPtr instantiate_rec(const FormulaPtr& f, const HerbrandUniverse& u,
                           std::map<std::string, Term>& env) {
    switch (f->kind) {
        case Formula::Kind::Bottom:
            return f;
        case Formula::Kind::Atom: {
            Atom a = substitute_atom(f->atom, env);
            if (a.kind == Atom::Kind::Truth) {
                return fol::f_top();
            }
            if (a.kind == Atom::Kind::Equality && a.is_ground()) {
                return a.args[0] == a.args[1] ? fol::f_top() : fol::f_bot();
            }
            return fol::f_atom(std::move(a));
        }
        case Formula::Kind::And: {
            std::vector<FormulaPtr> parts;
            for (const FormulaPtr& p : f->parts) {
                FormulaPtr q = instantiate_rec(p, u, env);
                if (q->kind == Formula::Kind::Bottom) {
                    return fol::f_bot();
                }
                parts.push_back(std::move(q));
            }
            return simplify_and(std::move(parts));
        }
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> parts;
            for (const FormulaPtr& p : f->parts) {
                FormulaPtr q = instantiate_rec(p, u, env);
                if (fol::is_top(*q)) {
                    return fol::f_top();
                }
                parts.push_back(std::move(q));
            }
            return simplify_or(std::move(parts));
        }
        case Formula::Kind::Implies: {
            FormulaPtr lhs = instantiate_rec(f->parts[0], u, env);
            FormulaPtr rhs = instantiate_rec(f->parts[1], u, env);
            return simplify_implies(std::move(lhs), std::move(rhs));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            bool universal = f->kind == Formula::Kind::Forall;
            // expand variables one at a time, folding as we go
            std::vector<FormulaPtr> parts;
            std::function<bool(size_t)> expand = [&](size_t vi) -> bool {
                // returns false when the whole block short-circuits
                if (vi == f->vars.size()) {
                    FormulaPtr q = instantiate_rec(f->body, u, env);
                    if (universal && q->kind == Formula::Kind::Bottom) {
                        return false;
                    }
                    if (!universal && fol::is_top(*q)) {
                        return false;
                    }
                    parts.push_back(std::move(q));
                    return true;
                }
                for (const Term& t : u.terms) {
                    env[f->vars[vi]] = t;
                    bool keep = expand(vi + 1);
                    env.erase(f->vars[vi]);
                    if (!keep) {
                        return false;
                    }
                }
                return true;
            };
            if (!expand(0)) {
                return universal ? fol::f_bot() : fol::f_top();
            }
            return universal ? simplify_and(std::move(parts)) : simplify_or(std::move(parts));
        }
    }
    return f;
}

} // namespace

FormulaPtr instantiate(const FormulaPtr& formula, const HerbrandUniverse& universe) {
    std::map<std::string, Term> env;
    return instantiate_rec(formula, universe, env);
}

GroundTheory ground_theory_over(const Program& program, const HerbrandUniverse& universe,
                                int atom_cap) {
    if (program.rules.empty()) {
        throw PreconditionViolation("ground_theory: empty program");
    }
    GroundTheory theory;
    theory.universe = universe;
    std::set<Atom> atom_set;
    for (const Rule& r : program.rules) {
        FormulaPtr g = instantiate(fol::fol_of_rule(r), universe);
        fol::collect_atoms(g, atom_set);
        if (static_cast<int>(atom_set.size()) > atom_cap) {
            throw CapExceeded("ground_theory: " + std::to_string(atom_set.size()) +
                              " atoms exceed the cap of " + std::to_string(atom_cap));
        }
        theory.formulas.push_back(std::move(g));
    }
    theory.atoms.assign(atom_set.begin(), atom_set.end());
    return theory;
}

GroundTheory ground_theory(const Program& program, int depth, int atom_cap) {
    Signature sig = signature(program);
    if (sig.object_constants.empty()) {
        // purely propositional programs quantify over nothing; any one-point
        // universe serves
        sig.object_constants.insert("c0");
    }
    return ground_theory_over(program, herbrand_universe(sig, depth), atom_cap);
}

GroundTheory theory_of_formulas(std::vector<FormulaPtr> formulas, int atom_cap) {
    GroundTheory theory;
    std::set<Atom> atom_set;
    for (const FormulaPtr& f : formulas) {
        if (!fol::free_variables(f).empty()) {
            throw PreconditionViolation("theory_of_formulas: formula is not variable-free");
        }
        fol::collect_atoms(f, atom_set);
    }
    if (static_cast<int>(atom_set.size()) > atom_cap) {
        throw CapExceeded("theory_of_formulas: atom cap exceeded");
    }
    theory.atoms.assign(atom_set.begin(), atom_set.end());
    theory.formulas = std::move(formulas);
    return theory;
}

} // namespace aspforge::ground
