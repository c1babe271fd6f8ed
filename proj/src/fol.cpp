#include "aspforge/fol.hpp"

#include <algorithm>

namespace aspforge::fol {

namespace {

// First occurrence order of free variables in a rule, used for deterministic
// universal closures.
std::vector<std::string> occurrence_order_vars(const Rule& rule) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    auto add_term = [&](const Term& t, auto&& self) -> void {
        if (t.kind == Term::Kind::Variable) {
            if (seen.insert(t.name).second) {
                order.push_back(t.name);
            }
            return;
        }
        for (const Term& a : t.args) {
            self(a, self);
        }
    };
    auto add_atom = [&](const Atom& a) {
        for (const Term& t : a.args) {
            add_term(t, add_term);
        }
    };
    for (const Atom& a : rule.head.atoms) {
        add_atom(a);
    }
    for (const BodyElem& e : rule.body) {
        if (e.kind == BodyElem::Kind::Plain) {
            add_atom(e.atom);
        } else {
            std::set<std::string> bound(e.agg.agg_vars.begin(), e.agg.agg_vars.end());
            for (const Literal& l : e.agg.conditions) {
                std::set<std::string> vs;
                collect_variables(l, vs);
                // keep literal-internal order approximate: set order is fine
                for (const Term& t : l.atom.args) {
                    std::function<void(const Term&)> walk = [&](const Term& u) {
                        if (u.kind == Term::Kind::Variable) {
                            if (!bound.count(u.name) && seen.insert(u.name).second) {
                                order.push_back(u.name);
                            }
                            return;
                        }
                        for (const Term& v : u.args) {
                            walk(v);
                        }
                    };
                    walk(t);
                }
            }
        }
    }
    return order;
}

FormulaPtr wrap_negations(FormulaPtr f, int negations) {
    for (int i = 0; i < negations; ++i) {
        f = f_not(std::move(f));
    }
    return f;
}

} // namespace

FormulaPtr fol_of_aggregate(const AggregateExpr& agg, const std::set<std::string>& avoid) {
    std::set<std::string> used = avoid;
    for (const Literal& l : agg.conditions) {
        collect_variables(l, used);
    }
    // Copy i of variable x is named x__<i+offset>; bump the offset until no
    // generated name collides with a name already in use.
    int offset = 0;
    auto collides = [&](int off) {
        for (int i = 1; i <= agg.bound; ++i) {
            for (const std::string& v : agg.agg_vars) {
                if (used.count(v + "__" + std::to_string(i + off))) {
                    return true;
                }
            }
        }
        return false;
    };
    while (collides(offset)) {
        ++offset;
    }

    std::vector<std::vector<Term>> copies; // copies[i][k]: copy i+1 of agg var k
    std::vector<std::string> quantified;
    for (int i = 1; i <= agg.bound; ++i) {
        std::vector<Term> tuple;
        for (const std::string& v : agg.agg_vars) {
            std::string name = v + "__" + std::to_string(i + offset);
            quantified.push_back(name);
            tuple.push_back(Term::variable(name));
        }
        copies.push_back(std::move(tuple));
    }

    std::vector<FormulaPtr> conjuncts;
    for (int i = 0; i < agg.bound; ++i) {
        std::map<std::string, Term> sub;
        for (size_t k = 0; k < agg.agg_vars.size(); ++k) {
            sub[agg.agg_vars[k]] = copies[i][k];
        }
        for (const Literal& l : agg.conditions) {
            FormulaPtr lit = f_atom(substitute_atom(l.atom, sub));
            conjuncts.push_back(l.negated ? f_not(lit) : lit);
        }
    }
    for (int i = 0; i < agg.bound; ++i) {
        for (int j = i + 1; j < agg.bound; ++j) {
            std::vector<FormulaPtr> eqs;
            for (size_t k = 0; k < agg.agg_vars.size(); ++k) {
                eqs.push_back(f_atom(Atom::equality(copies[i][k], copies[j][k])));
            }
            conjuncts.push_back(f_not(f_and(std::move(eqs))));
        }
    }
    return f_exists(std::move(quantified), f_and(std::move(conjuncts)));
}

FormulaPtr fol_of_body_elem(const BodyElem& elem, const std::set<std::string>& avoid) {
    if (elem.kind == BodyElem::Kind::Plain) {
        return wrap_negations(f_atom(elem.atom), elem.negations);
    }
    FormulaPtr agg = fol_of_aggregate(elem.agg, avoid);
    return elem.agg_negated ? f_not(std::move(agg)) : agg;
}

FormulaPtr fol_of_body(const std::vector<BodyElem>& body, const std::set<std::string>& avoid) {
    std::vector<FormulaPtr> parts;
    parts.reserve(body.size());
    for (const BodyElem& e : body) {
        parts.push_back(fol_of_body_elem(e, avoid));
    }
    return f_and(std::move(parts));
}

FormulaPtr fol_of_rule(const Rule& rule) {
    std::set<std::string> avoid = rule_variables(rule);
    std::vector<std::string> closure = occurrence_order_vars(rule);
    if (rule.head.kind == Head::Kind::Choice) {
        FormulaPtr head = f_atom(rule.head.atoms[0]);
        std::vector<FormulaPtr> ante;
        ante.push_back(f_not(f_not(head)));
        for (const BodyElem& e : rule.body) {
            ante.push_back(fol_of_body_elem(e, avoid));
        }
        return f_forall(std::move(closure), f_implies(f_and(std::move(ante)), head));
    }
    std::vector<FormulaPtr> head_parts;
    for (const Atom& a : rule.head.atoms) {
        head_parts.push_back(f_atom(a));
    }
    FormulaPtr head = f_or(std::move(head_parts)); // empty disjunction = bot
    if (rule.body.empty()) {
        return f_forall(std::move(closure), head);
    }
    return f_forall(std::move(closure), f_implies(fol_of_body(rule.body, avoid), head));
}

FormulaPtr fol_of_program(const Program& program) {
    if (program.rules.empty()) {
        throw PreconditionViolation("fol_of_program: empty program");
    }
    std::vector<FormulaPtr> parts;
    parts.reserve(program.rules.size());
    for (const Rule& r : program.rules) {
        parts.push_back(fol_of_rule(r));
    }
    return f_and(std::move(parts));
}

namespace {

struct HeadShape {
    bool substitutable = false;         // head args are distinct variables
    std::vector<std::string> head_vars; // when substitutable
};

HeadShape head_shape(const Rule& rule) {
    HeadShape s;
    const Atom& h = rule.head.atoms[0];
    std::set<std::string> seen;
    for (const Term& t : h.args) {
        if (t.kind != Term::Kind::Variable || !seen.insert(t.name).second) {
            return s;
        }
    }
    s.substitutable = true;
    for (const Term& t : h.args) {
        s.head_vars.push_back(t.name);
    }
    return s;
}

} // namespace

FormulaPtr clark_normal_form(const Program& program, const std::set<std::string>& preds) {
    std::map<std::string, std::vector<const Rule*>> by_pred;
    for (const Rule& r : program.rules) {
        RuleClass cls = classify_rule(r);
        if (cls == RuleClass::Denial) {
            throw PreconditionViolation("clark_normal_form: strip denials first");
        }
        const std::string& p = r.head.atoms[0].pred;
        if (cls == RuleClass::DisjunctiveRule) {
            throw Error("clark_normal_form: disjunctive rule with head predicate " + p);
        }
        if (!preds.count(p)) {
            throw PreconditionViolation("clark_normal_form: rule head predicate " + p +
                                        " outside the requested predicate set");
        }
        by_pred[p].push_back(&r);
    }

    Signature sig = signature(program);
    std::vector<FormulaPtr> conjuncts;
    for (const std::string& p : preds) {
        auto arity_it = sig.predicates.find(p);
        int arity = arity_it != sig.predicates.end() ? arity_it->second : 0;
        const std::vector<const Rule*>& rules = by_pred.count(p) ? by_pred[p] : std::vector<const Rule*>{};

        // Pick the target tuple: reuse the first rule's head variables when
        // every rule can be renamed onto them without capture; otherwise a
        // globally fresh tuple.
        std::vector<std::string> tuple;
        bool reuse = !rules.empty();
        if (reuse) {
            HeadShape first = head_shape(*rules[0]);
            if (!first.substitutable) {
                reuse = false;
            } else {
                tuple = first.head_vars;
                for (const Rule* r : rules) {
                    HeadShape s = head_shape(*r);
                    if (!s.substitutable) {
                        reuse = false;
                        break;
                    }
                    std::set<std::string> others = rule_variables(*r);
                    for (const std::string& hv : s.head_vars) {
                        others.erase(hv);
                    }
                    for (const std::string& tv : tuple) {
                        if (others.count(tv)) {
                            reuse = false; // renaming would capture
                            break;
                        }
                    }
                    if (!reuse) {
                        break;
                    }
                }
            }
        }
        if (!reuse) {
            std::set<std::string> used;
            for (const Rule* r : rules) {
                std::set<std::string> vs = rule_variables(*r);
                used.insert(vs.begin(), vs.end());
            }
            tuple.clear();
            int offset = 0;
            auto collides = [&](int off) {
                for (int k = 1; k <= arity; ++k) {
                    if (used.count("X__" + std::to_string(k + off))) {
                        return true;
                    }
                }
                return false;
            };
            while (arity > 0 && collides(offset)) {
                ++offset;
            }
            for (int k = 1; k <= arity; ++k) {
                tuple.push_back("X__" + std::to_string(k + offset));
            }
        }

        std::vector<Term> tuple_terms;
        for (const std::string& v : tuple) {
            tuple_terms.push_back(Term::variable(v));
        }
        FormulaPtr head_atom = f_atom(Atom::predicate(p, tuple_terms));

        std::vector<FormulaPtr> disjuncts;
        for (const Rule* r : rules) {
            std::set<std::string> avoid = rule_variables(*r);
            avoid.insert(tuple.begin(), tuple.end());
            HeadShape s = head_shape(*r);
            bool is_choice = r->head.kind == Head::Kind::Choice;
            if (reuse || (s.substitutable && [&] {
                    std::set<std::string> others = rule_variables(*r);
                    for (const std::string& hv : s.head_vars) {
                        others.erase(hv);
                    }
                    for (const std::string& tv : tuple) {
                        if (others.count(tv)) {
                            return false;
                        }
                    }
                    return true;
                }())) {
                // Rename head variables onto the tuple, close the rest
                // existentially.
                std::map<std::string, Term> ren;
                for (size_t k = 0; k < s.head_vars.size(); ++k) {
                    ren[s.head_vars[k]] = Term::variable(tuple[k]);
                }
                std::vector<FormulaPtr> parts;
                if (is_choice) {
                    parts.push_back(f_not(f_not(head_atom)));
                }
                for (const BodyElem& e : r->body) {
                    FormulaPtr fe = fol_of_body_elem(e, avoid);
                    parts.push_back(substitute(fe, ren));
                }
                std::set<std::string> inner = rule_variables(*r);
                for (const std::string& hv : s.head_vars) {
                    inner.erase(hv);
                }
                std::vector<std::string> inner_vars(inner.begin(), inner.end());
                disjuncts.push_back(f_exists(std::move(inner_vars), f_and(std::move(parts))));
            } else {
                // General form: exists (rule vars) (x = t componentwise /\ body).
                std::vector<FormulaPtr> parts;
                if (is_choice) {
                    parts.push_back(f_not(f_not(head_atom)));
                }
                const Atom& h = r->head.atoms[0];
                for (size_t k = 0; k < h.args.size(); ++k) {
                    parts.push_back(f_atom(Atom::equality(tuple_terms[k], h.args[k])));
                }
                for (const BodyElem& e : r->body) {
                    parts.push_back(fol_of_body_elem(e, avoid));
                }
                std::set<std::string> inner = rule_variables(*r);
                std::vector<std::string> inner_vars(inner.begin(), inner.end());
                disjuncts.push_back(f_exists(std::move(inner_vars), f_and(std::move(parts))));
            }
        }
        FormulaPtr definition = f_or(std::move(disjuncts)); // empty -> bot
        conjuncts.push_back(f_forall(std::vector<std::string>(tuple), f_implies(definition, head_atom)));
    }
    return f_and(std::move(conjuncts));
}

namespace {

FormulaPtr complete_conjunct(const FormulaPtr& c) {
    const Formula* f = c.get();
    std::vector<std::string> vars;
    if (f->kind == Formula::Kind::Forall) {
        vars = f->vars;
        f = f->body.get();
    }
    if (f->kind != Formula::Kind::Implies) {
        throw Error("completion: conjunct is not a definitional implication: " + to_string(c));
    }
    const FormulaPtr& lhs = f->parts[0];
    const FormulaPtr& rhs = f->parts[1];
    if (rhs->kind != Formula::Kind::Atom || rhs->atom.kind != Atom::Kind::Predicate) {
        throw Error("completion: consequent is not a predicate atom: " + to_string(c));
    }
    std::set<std::string> arg_vars;
    for (const Term& t : rhs->atom.args) {
        if (t.kind != Term::Kind::Variable || arg_vars.count(t.name)) {
            throw Error("completion: head arguments are not distinct variables: " + to_string(c));
        }
        arg_vars.insert(t.name);
    }
    std::set<std::string> quantified(vars.begin(), vars.end());
    if (arg_vars != quantified) {
        throw Error("completion: quantified tuple does not match the head: " + to_string(c));
    }
    return f_forall(std::move(vars), f_iff(lhs, rhs));
}

} // namespace

FormulaPtr completion(const FormulaPtr& cnf) {
    if (cnf->kind == Formula::Kind::And) {
        std::vector<FormulaPtr> parts;
        parts.reserve(cnf->parts.size());
        for (const FormulaPtr& c : cnf->parts) {
            parts.push_back(complete_conjunct(c));
        }
        return f_and(std::move(parts));
    }
    return complete_conjunct(cnf);
}

} // namespace aspforge::fol
