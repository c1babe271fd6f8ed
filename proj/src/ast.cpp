#include "aspforge/ast.hpp"

#include <algorithm>

namespace aspforge {

bool Term::is_ground() const {
    if (kind == Kind::Variable) {
        return false;
    }
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

Signature& Signature::merge(const Signature& other) {
    object_constants.insert(other.object_constants.begin(), other.object_constants.end());
    function_symbols.insert(other.function_symbols.begin(), other.function_symbols.end());
    predicates.insert(other.predicates.begin(), other.predicates.end());
    return *this;
}

void collect_signature(const Term& term, Signature& sig) {
    switch (term.kind) {
        case Term::Kind::Constant:
            sig.object_constants.insert(term.name);
            break;
        case Term::Kind::Variable:
            break;
        case Term::Kind::Compound:
            sig.function_symbols[term.name] = static_cast<int>(term.args.size());
            for (const Term& a : term.args) {
                collect_signature(a, sig);
            }
            break;
    }
}

void collect_signature(const Atom& atom, Signature& sig) {
    if (atom.kind == Atom::Kind::Predicate) {
        sig.predicates[atom.pred] = static_cast<int>(atom.args.size());
    }
    for (const Term& t : atom.args) {
        collect_signature(t, sig);
    }
}

Signature signature(const Program& program) {
    Signature sig;
    for (const Rule& rule : program.rules) {
        for (const Atom& a : rule.head.atoms) {
            collect_signature(a, sig);
        }
        for (const BodyElem& e : rule.body) {
            if (e.kind == BodyElem::Kind::Plain) {
                collect_signature(e.atom, sig);
            } else {
                for (const Literal& l : e.agg.conditions) {
                    collect_signature(l.atom, sig);
                }
            }
        }
    }
    return sig;
}

RuleClass classify_rule(const Rule& rule) {
    if (rule.head.kind == Head::Kind::Choice) {
        return RuleClass::ChoiceRule;
    }
    switch (rule.head.atoms.size()) {
        case 0: return RuleClass::Denial;
        case 1: return RuleClass::Defining;
        default: return RuleClass::DisjunctiveRule;
    }
}

namespace {

bool heads_coincide(const Head& a, const Head& b) {
    if (a.kind != b.kind) {
        return false;
    }
    std::vector<Atom> xs = a.atoms, ys = b.atoms;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    return xs == ys;
}

} // namespace

bool subsumes(const Rule& r, const Rule& sub) {
    if (!heads_coincide(r.head, sub.head)) {
        return false;
    }
    // body(r) must be a sub-multiset of body(sub)
    std::vector<BodyElem> pool = sub.body;
    for (const BodyElem& e : r.body) {
        auto it = std::find(pool.begin(), pool.end(), e);
        if (it == pool.end()) {
            return false;
        }
        pool.erase(it);
    }
    return true;
}

bool is_simple_rule(const Rule& rule) {
    for (const BodyElem& e : rule.body) {
        if (e.kind != BodyElem::Kind::Plain || e.negations > 1) {
            return false;
        }
    }
    return true;
}

std::optional<int> terminal_rank(const Program& program, const std::string& predicate) {
    // Iteratively assign ranks until a fixpoint is reached.
    std::map<std::string, int> rank;
    auto head_preds = [](const Rule& r) {
        std::set<std::string> ps;
        for (const Atom& a : r.head.atoms) {
            if (a.kind == Atom::Kind::Predicate) {
                ps.insert(a.pred);
            }
        }
        return ps;
    };
    auto positive_body_preds = [](const Rule& r) {
        std::set<std::string> ps;
        for (const BodyElem& e : r.body) {
            if (e.kind == BodyElem::Kind::Plain && e.negations == 0 &&
                e.atom.kind == Atom::Kind::Predicate) {
                ps.insert(e.atom.pred);
            }
        }
        return ps;
    };

    std::set<std::string> all_preds;
    for (const auto& [p, _] : signature(program).predicates) {
        all_preds.insert(p);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (const std::string& p : all_preds) {
            if (rank.count(p)) {
                continue;
            }
            bool all_simple = true;
            bool all_empty = true;
            bool ranks_known = true;
            int max_rank = -1; // stays -1 when no positive body predicate occurs
            for (const Rule& r : program.rules) {
                if (!head_preds(r).count(p)) {
                    continue;
                }
                if (!r.body.empty()) {
                    all_empty = false;
                }
                if (!is_simple_rule(r)) {
                    all_simple = false;
                    break;
                }
                for (const std::string& q : positive_body_preds(r)) {
                    auto it = rank.find(q);
                    if (it == rank.end()) {
                        ranks_known = false;
                        break;
                    }
                    max_rank = std::max(max_rank, it->second);
                }
                if (!ranks_known) {
                    break;
                }
            }
            if (!all_simple || !ranks_known) {
                continue;
            }
            if (all_empty) {
                rank[p] = 0;
                changed = true;
            } else if (max_rank >= 0) {
                rank[p] = max_rank + 1;
                changed = true;
            }
            // Simple rules whose positive bodies mention no ranked predicate
            // at all (e.g. only negated atoms) never make the predicate
            // terminal: the "at least one i-terminal" condition fails.
        }
    }
    auto it = rank.find(predicate);
    if (it == rank.end()) {
        return std::nullopt;
    }
    return it->second;
}

void collect_variables(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::Variable) {
        out.insert(t.name);
    }
    for (const Term& a : t.args) {
        collect_variables(a, out);
    }
}

void collect_variables(const Atom& a, std::set<std::string>& out) {
    for (const Term& t : a.args) {
        collect_variables(t, out);
    }
}

void collect_variables(const Literal& l, std::set<std::string>& out) {
    collect_variables(l.atom, out);
}

void collect_variables(const BodyElem& e, std::set<std::string>& out) {
    if (e.kind == BodyElem::Kind::Plain) {
        collect_variables(e.atom, out);
    } else {
        for (const std::string& v : e.agg.agg_vars) {
            out.insert(v);
        }
        for (const Literal& l : e.agg.conditions) {
            collect_variables(l, out);
        }
    }
}

void collect_free_variables(const BodyElem& e, std::set<std::string>& out) {
    if (e.kind == BodyElem::Kind::Plain) {
        collect_variables(e.atom, out);
        return;
    }
    std::set<std::string> vs;
    for (const Literal& l : e.agg.conditions) {
        collect_variables(l, vs);
    }
    for (const std::string& v : e.agg.agg_vars) {
        vs.erase(v);
    }
    out.insert(vs.begin(), vs.end());
}

std::set<std::string> rule_variables(const Rule& rule) {
    std::set<std::string> out;
    for (const Atom& a : rule.head.atoms) {
        collect_variables(a, out);
    }
    for (const BodyElem& e : rule.body) {
        collect_variables(e, out);
    }
    return out;
}

std::set<std::string> head_variables(const Rule& rule) {
    std::set<std::string> out;
    for (const Atom& a : rule.head.atoms) {
        collect_variables(a, out);
    }
    return out;
}

Term substitute_term(const Term& t, const std::map<std::string, Term>& sub) {
    switch (t.kind) {
        case Term::Kind::Variable: {
            auto it = sub.find(t.name);
            return it == sub.end() ? t : it->second;
        }
        case Term::Kind::Constant:
            return t;
        case Term::Kind::Compound: {
            Term out = t;
            for (Term& a : out.args) {
                a = substitute_term(a, sub);
            }
            return out;
        }
    }
    return t;
}

Atom substitute_atom(const Atom& a, const std::map<std::string, Term>& sub) {
    Atom out = a;
    for (Term& t : out.args) {
        t = substitute_term(t, sub);
    }
    return out;
}

} // namespace aspforge
