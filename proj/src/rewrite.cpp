#include "aspforge/rewrite.hpp"

#include "aspforge/depgraph.hpp"
#include "aspforge/fol.hpp"
#include "aspforge/parser.hpp"

#include <algorithm>
#include <functional>

namespace aspforge::rewrite {

// --------------------------------------------------------------------------
// Subsumption.
// --------------------------------------------------------------------------

RewriteResult subsumption_simplify(const Program& program) {
    RewriteResult res;
    res.report.pass = "subsumption";
    const auto& rules = program.rules;
    std::vector<bool> removed(rules.size(), false);
    for (size_t i = 0; i < rules.size(); ++i) {
        for (size_t j = 0; j < rules.size(); ++j) {
            if (i == j) {
                continue;
            }
            if (!subsumes(rules[j], rules[i])) {
                continue;
            }
            // j beats i when the subsumption is strict or j comes first
            if (!subsumes(rules[i], rules[j]) || j < i) {
                removed[i] = true;
                break;
            }
        }
    }
    for (size_t i = 0; i < rules.size(); ++i) {
        if (removed[i]) {
            res.report.removed.push_back(rules[i]);
        } else {
            res.program.rules.push_back(rules[i]);
        }
    }
    return res;
}

RewriteResult subsumption_add(const Program& program, const Rule& r,
                              const std::vector<BodyElem>& extra_body) {
    RewriteResult res;
    res.report.pass = "subsumption-add";
    res.program = program;
    Rule sub = r;
    sub.body.insert(sub.body.end(), extra_body.begin(), extra_body.end());
    res.report.added.push_back(sub);
    res.program.rules.push_back(std::move(sub));
    return res;
}

// --------------------------------------------------------------------------
// Aggregate rewritings.
// --------------------------------------------------------------------------

namespace {

std::set<std::string> context_variables(const Rule& rule, size_t skip_elem) {
    std::set<std::string> vars = head_variables(rule);
    for (size_t i = 0; i < rule.body.size(); ++i) {
        if (i == skip_elem) {
            continue;
        }
        collect_variables(rule.body[i], vars);
    }
    return vars;
}

} // namespace

Rule eliminate_aggregate(const Rule& rule) {
    for (size_t i = 0; i < rule.body.size(); ++i) {
        const BodyElem& e = rule.body[i];
        if (e.kind != BodyElem::Kind::Agg || e.agg_negated) {
            continue;
        }
        if (e.agg.agg_vars.size() != 1) {
            throw NotApplicable(
                "eliminate_aggregate: tuple aggregates need a tuple inequality, which is "
                "not a body literal");
        }
        std::set<std::string> context = context_variables(rule, i);
        bool clash = false;
        for (const std::string& v : e.agg.agg_vars) {
            if (context.count(v)) {
                clash = true;
            }
        }
        if (clash) {
            continue; // side condition fails for this aggregate
        }
        const std::string& var = e.agg.agg_vars[0];
        // copy naming mirrors the FOL expansion: var__1 .. var__b
        std::set<std::string> used = rule_variables(rule);
        int offset = 0;
        auto collides = [&](int off) {
            for (int k = 1; k <= e.agg.bound; ++k) {
                if (used.count(var + "__" + std::to_string(k + off))) {
                    return true;
                }
            }
            return false;
        };
        while (collides(offset)) {
            ++offset;
        }
        std::vector<Term> copies;
        for (int k = 1; k <= e.agg.bound; ++k) {
            copies.push_back(Term::variable(var + "__" + std::to_string(k + offset)));
        }
        std::vector<BodyElem> replacement;
        for (int k = 0; k < e.agg.bound; ++k) {
            std::map<std::string, Term> sub{{var, copies[static_cast<size_t>(k)]}};
            for (const Literal& l : e.agg.conditions) {
                replacement.push_back(
                    BodyElem::plain(substitute_atom(l.atom, sub), l.negated ? 1 : 0));
            }
        }
        for (int a = 0; a < e.agg.bound; ++a) {
            for (int b = a + 1; b < e.agg.bound; ++b) {
                replacement.push_back(BodyElem::plain(
                    Atom::equality(copies[static_cast<size_t>(a)], copies[static_cast<size_t>(b)]), 1));
            }
        }
        Rule out = rule;
        out.body.erase(out.body.begin() + static_cast<long>(i));
        out.body.insert(out.body.begin() + static_cast<long>(i), replacement.begin(),
                        replacement.end());
        return out;
    }
    throw NotApplicable("eliminate_aggregate: no non-negated aggregate with private variables");
}

Rule unwrap_singleton_count(const Rule& rule) {
    for (size_t i = 0; i < rule.body.size(); ++i) {
        const BodyElem& e = rule.body[i];
        if (e.kind != BodyElem::Kind::Agg || e.agg_negated || e.agg.bound != 1) {
            continue;
        }
        std::set<std::string> context = context_variables(rule, i);
        bool clash = false;
        for (const std::string& v : e.agg.agg_vars) {
            if (context.count(v)) {
                clash = true;
            }
        }
        if (clash) {
            continue;
        }
        Rule out = rule;
        std::vector<BodyElem> replacement;
        for (const Literal& l : e.agg.conditions) {
            replacement.push_back(BodyElem::plain(l.atom, l.negated ? 1 : 0));
        }
        out.body.erase(out.body.begin() + static_cast<long>(i));
        out.body.insert(out.body.begin() + static_cast<long>(i), replacement.begin(),
                        replacement.end());
        return out;
    }
    throw NotApplicable("unwrap_singleton_count: no applicable 1 <= #count aggregate");
}

Rule wrap_singleton_count(const Rule& rule) {
    if (rule.body.empty()) {
        throw NotApplicable("wrap_singleton_count: empty body");
    }
    std::vector<Literal> conditions;
    for (const BodyElem& e : rule.body) {
        if (e.kind != BodyElem::Kind::Plain || e.negations > 1) {
            throw NotApplicable("wrap_singleton_count: body is not a list of literals");
        }
        conditions.push_back(Literal{e.atom, e.negations == 1});
    }
    std::set<std::string> body_vars;
    for (const BodyElem& e : rule.body) {
        collect_variables(e, body_vars);
    }
    std::set<std::string> head_vars = head_variables(rule);
    std::vector<std::string> agg_vars;
    for (const std::string& v : body_vars) {
        if (!head_vars.count(v)) {
            agg_vars.push_back(v);
        }
    }
    if (agg_vars.empty()) {
        throw NotApplicable("wrap_singleton_count: no body-only variables to bind");
    }
    AggregateExpr agg;
    agg.bound = 1;
    agg.agg_vars = std::move(agg_vars);
    agg.conditions = std::move(conditions);
    Rule out = rule;
    out.body.clear();
    out.body.push_back(BodyElem::aggregate(std::move(agg)));
    return out;
}

// --------------------------------------------------------------------------
// Choice <-> defining (three-rule pattern).
// --------------------------------------------------------------------------

namespace {

// Tuple of variables shared by p(x) and q(x); nullopt when args are not
// variables or the tuples differ.
std::optional<std::vector<std::string>> variable_tuple(const Atom& a) {
    std::vector<std::string> out;
    for (const Term& t : a.args) {
        if (t.kind != Term::Kind::Variable) {
            return std::nullopt;
        }
        out.push_back(t.name);
    }
    return out;
}

// Matches `pattern` as a sub-multiset of `body` under a variable renaming
// that is the identity on `fixed`.  Returns the renamed pattern positions in
// `body` or nullopt.  Backtracking over small bodies.
std::optional<std::vector<size_t>> match_sub_multiset(
    const std::vector<BodyElem>& pattern, const std::vector<BodyElem>& body,
    const std::set<std::string>& fixed) {
    std::map<std::string, std::string> ren; // pattern var -> body var
    std::set<std::string> taken;            // body vars already used
    std::vector<size_t> chosen;
    std::vector<bool> used(body.size(), false);

    std::function<bool(const Term&, const Term&)> match_term = [&](const Term& a, const Term& b) {
        if (a.kind == Term::Kind::Variable) {
            if (b.kind != Term::Kind::Variable) {
                return false;
            }
            if (fixed.count(a.name) || fixed.count(b.name)) {
                return a.name == b.name;
            }
            auto it = ren.find(a.name);
            if (it != ren.end()) {
                return it->second == b.name;
            }
            if (taken.count(b.name)) {
                return false;
            }
            ren[a.name] = b.name;
            taken.insert(b.name);
            return true;
        }
        if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) {
            return false;
        }
        for (size_t i = 0; i < a.args.size(); ++i) {
            if (!match_term(a.args[i], b.args[i])) {
                return false;
            }
        }
        return true;
    };
    auto match_atom = [&](const Atom& a, const Atom& b) {
        if (a.kind != b.kind || a.pred != b.pred || a.args.size() != b.args.size()) {
            return false;
        }
        for (size_t i = 0; i < a.args.size(); ++i) {
            if (!match_term(a.args[i], b.args[i])) {
                return false;
            }
        }
        return true;
    };
    auto match_elem = [&](const BodyElem& a, const BodyElem& b) {
        if (a.kind != b.kind) {
            return false;
        }
        if (a.kind == BodyElem::Kind::Plain) {
            return a.negations == b.negations && match_atom(a.atom, b.atom);
        }
        if (a.agg_negated != b.agg_negated || a.agg.bound != b.agg.bound ||
            a.agg.agg_vars.size() != b.agg.agg_vars.size() ||
            a.agg.conditions.size() != b.agg.conditions.size()) {
            return false;
        }
        // aggregate variables are local: require equal names for simplicity
        if (a.agg.agg_vars != b.agg.agg_vars) {
            return false;
        }
        for (size_t i = 0; i < a.agg.conditions.size(); ++i) {
            if (a.agg.conditions[i].negated != b.agg.conditions[i].negated ||
                !match_atom(a.agg.conditions[i].atom, b.agg.conditions[i].atom)) {
                return false;
            }
        }
        return true;
    };

    std::function<bool(size_t)> place = [&](size_t pi) -> bool {
        if (pi == pattern.size()) {
            return true;
        }
        for (size_t bi = 0; bi < body.size(); ++bi) {
            if (used[bi]) {
                continue;
            }
            auto saved_ren = ren;
            auto saved_taken = taken;
            if (match_elem(pattern[pi], body[bi])) {
                used[bi] = true;
                chosen.push_back(bi);
                if (place(pi + 1)) {
                    return true;
                }
                chosen.pop_back();
                used[bi] = false;
            }
            ren = saved_ren;
            taken = saved_taken;
        }
        return false;
    };
    if (!place(0)) {
        return std::nullopt;
    }
    return chosen;
}

struct ChoicePattern {
    size_t denial_index = 0;
    size_t defining_index = 0;
    size_t choice_index = 0;
    std::vector<std::string> tuple;      // x
    std::vector<BodyElem> f1;            // from the defining rule
    std::vector<size_t> f1_in_choice;    // positions of (renamed) F1 in the choice body
};

std::optional<ChoicePattern> find_pattern(const Program& program, const std::string& p,
                                          const std::string& q, bool choice_form) {
    for (size_t di = 0; di < program.rules.size(); ++di) {
        const Rule& denial = program.rules[di];
        if (classify_rule(denial) != RuleClass::Denial || denial.body.size() != 2) {
            continue;
        }
        const BodyElem& b0 = denial.body[0];
        const BodyElem& b1 = denial.body[1];
        if (b0.kind != BodyElem::Kind::Plain || b1.kind != BodyElem::Kind::Plain ||
            b0.negations != 0 || b1.negations != 0) {
            continue;
        }
        const BodyElem* pe = nullptr;
        const BodyElem* qe = nullptr;
        if (b0.atom.kind == Atom::Kind::Predicate && b0.atom.pred == p &&
            b1.atom.kind == Atom::Kind::Predicate && b1.atom.pred == q) {
            pe = &b0;
            qe = &b1;
        } else if (b1.atom.kind == Atom::Kind::Predicate && b1.atom.pred == p &&
                   b0.atom.kind == Atom::Kind::Predicate && b0.atom.pred == q) {
            pe = &b1;
            qe = &b0;
        } else {
            continue;
        }
        auto tp = variable_tuple(pe->atom);
        auto tq = variable_tuple(qe->atom);
        if (!tp || !tq || *tp != *tq) {
            continue;
        }
        for (size_t qi = 0; qi < program.rules.size(); ++qi) {
            const Rule& def = program.rules[qi];
            if (classify_rule(def) != RuleClass::Defining || def.head.atoms[0].pred != q) {
                continue;
            }
            auto tq2 = variable_tuple(def.head.atoms[0]);
            if (!tq2 || *tq2 != *tp) {
                continue;
            }
            // locate `not p(x)` in the defining body
            BodyElem not_p = BodyElem::plain(
                Atom::predicate(p, def.head.atoms[0].args), 1);
            auto it = std::find(def.body.begin(), def.body.end(), not_p);
            if (it == def.body.end()) {
                continue;
            }
            std::vector<BodyElem> f1 = def.body;
            f1.erase(f1.begin() + (it - def.body.begin()));
            for (size_t ci = 0; ci < program.rules.size(); ++ci) {
                const Rule& third = program.rules[ci];
                if (ci == qi || ci == di) {
                    continue;
                }
                if (choice_form) {
                    if (classify_rule(third) != RuleClass::ChoiceRule ||
                        third.head.atoms[0].pred != p) {
                        continue;
                    }
                } else {
                    // looking for p(x) :- not q(x), F1, F2
                    if (classify_rule(third) != RuleClass::Defining ||
                        third.head.atoms[0].pred != p) {
                        continue;
                    }
                }
                auto tp2 = variable_tuple(third.head.atoms[0]);
                if (!tp2 || *tp2 != *tp) {
                    continue;
                }
                std::set<std::string> fixed(tp->begin(), tp->end());
                std::vector<BodyElem> search_body = third.body;
                std::optional<size_t> not_q_pos;
                if (!choice_form) {
                    BodyElem not_q = BodyElem::plain(Atom::predicate(q, third.head.atoms[0].args), 1);
                    auto nq = std::find(search_body.begin(), search_body.end(), not_q);
                    if (nq == search_body.end()) {
                        continue;
                    }
                    not_q_pos = static_cast<size_t>(nq - search_body.begin());
                    search_body.erase(nq);
                }
                auto positions = match_sub_multiset(f1, search_body, fixed);
                if (!positions) {
                    continue;
                }
                ChoicePattern pat;
                pat.denial_index = di;
                pat.defining_index = qi;
                pat.choice_index = ci;
                pat.tuple = *tp;
                pat.f1 = f1;
                if (not_q_pos) {
                    // re-map positions into the original body indexing
                    for (size_t& pos : *positions) {
                        if (pos >= *not_q_pos) {
                            ++pos;
                        }
                    }
                }
                pat.f1_in_choice = *positions;
                return pat;
            }
        }
    }
    return std::nullopt;
}

} // namespace

RewriteResult choice_to_defining(const Program& program, const std::string& p,
                                 const std::string& q) {
    auto pat = find_pattern(program, p, q, /*choice_form=*/true);
    if (!pat) {
        throw NotApplicable("choice_to_defining: pattern (denial, defining, choice) not found for " +
                            p + "/" + q);
    }
    const Rule& choice = program.rules[pat->choice_index];
    Rule replacement;
    replacement.head = Head::disjunction({choice.head.atoms[0]});
    replacement.body.push_back(BodyElem::plain(Atom::predicate(q, choice.head.atoms[0].args), 1));
    replacement.body.insert(replacement.body.end(), choice.body.begin(), choice.body.end());
    RewriteResult res;
    res.report.pass = "choice-to-defining";
    res.program = program;
    res.report.removed.push_back(choice);
    res.report.added.push_back(replacement);
    res.program.rules[pat->choice_index] = std::move(replacement);
    return res;
}

RewriteResult defining_to_choice(const Program& program, const std::string& p,
                                 const std::string& q) {
    auto pat = find_pattern(program, p, q, /*choice_form=*/false);
    if (!pat) {
        throw NotApplicable("defining_to_choice: pattern (denial, defining, p-rule) not found for " +
                            p + "/" + q);
    }
    const Rule& prule = program.rules[pat->choice_index];
    Rule replacement;
    replacement.head = Head::choice(prule.head.atoms[0]);
    BodyElem not_q = BodyElem::plain(Atom::predicate(q, prule.head.atoms[0].args), 1);
    for (const BodyElem& e : prule.body) {
        if (e == not_q) {
            continue; // dropped: the choice form has no not-q literal
        }
        replacement.body.push_back(e);
    }
    RewriteResult res;
    res.report.pass = "defining-to-choice";
    res.program = program;
    res.report.removed.push_back(prule);
    res.report.added.push_back(replacement);
    res.program.rules[pat->choice_index] = std::move(replacement);
    return res;
}

// --------------------------------------------------------------------------
// Shifting.
// --------------------------------------------------------------------------

RewriteResult shift_rules(const Program& program, const std::vector<ShiftTarget>& targets) {
    auto components = depgraph::sccs(depgraph::dependency_graph(program));
    RewriteResult res;
    res.report.pass = "shift";

    std::map<size_t, const ShiftTarget*> by_index;
    for (const ShiftTarget& t : targets) {
        if (t.rule_index >= program.rules.size()) {
            throw PreconditionViolation("shift_rules: rule index out of range");
        }
        by_index[t.rule_index] = &t;
    }

    // legality + partition well-formedness
    for (const ShiftTarget& t : targets) {
        const Rule& rule = program.rules[t.rule_index];
        if (classify_rule(rule) != RuleClass::DisjunctiveRule) {
            throw NotApplicable("shift_rules: rule " + std::to_string(t.rule_index) +
                                " is not a disjunctive rule with l > 1");
        }
        std::set<std::string> head_preds;
        for (const Atom& a : rule.head.atoms) {
            head_preds.insert(a.pred);
        }
        std::set<std::string> seen;
        for (const auto& member : t.partition) {
            for (const std::string& pr : member) {
                if (!head_preds.count(pr)) {
                    throw PreconditionViolation("shift_rules: predicate " + pr +
                                                " does not occur in the rule head");
                }
                if (!seen.insert(pr).second) {
                    throw PreconditionViolation("shift_rules: predicate " + pr +
                                                " appears in two partition members");
                }
            }
        }
        if (seen != head_preds) {
            throw PreconditionViolation("shift_rules: partition does not cover the head predicates");
        }
        for (const auto& comp : components) {
            int touched = 0;
            for (const auto& member : t.partition) {
                bool intersects = std::any_of(member.begin(), member.end(), [&](const std::string& pr) {
                    return std::find(comp.begin(), comp.end(), pr) != comp.end();
                });
                if (intersects) {
                    ++touched;
                }
            }
            if (touched > 1) {
                throw IllegalPartition(
                    "shift_rules: strongly connected component {" +
                        [&] {
                            std::string s;
                            for (size_t i = 0; i < comp.size(); ++i) {
                                if (i) {
                                    s += ",";
                                }
                                s += comp[i];
                            }
                            return s;
                        }() +
                        "} intersects two partition members",
                    comp);
            }
        }
    }

    for (size_t i = 0; i < program.rules.size(); ++i) {
        auto it = by_index.find(i);
        if (it == by_index.end()) {
            res.program.rules.push_back(program.rules[i]);
            continue;
        }
        const Rule& rule = program.rules[i];
        res.report.removed.push_back(rule);
        for (const auto& member : it->second->partition) {
            std::set<std::string> keep(member.begin(), member.end());
            Rule shifted;
            std::vector<Atom> kept;
            std::vector<Atom> moved;
            for (const Atom& a : rule.head.atoms) {
                if (keep.count(a.pred)) {
                    kept.push_back(a);
                } else {
                    moved.push_back(a);
                }
            }
            shifted.head = Head::disjunction(std::move(kept));
            shifted.body = rule.body;
            for (const Atom& a : moved) {
                shifted.body.push_back(BodyElem::plain(a, 1));
            }
            res.report.added.push_back(shifted);
            res.program.rules.push_back(std::move(shifted));
        }
    }
    return res;
}

// --------------------------------------------------------------------------
// Projection.
// --------------------------------------------------------------------------

ProjectionResult project_rule(const Rule& rule, const std::vector<std::string>& x,
                              const std::vector<size_t>& alpha,
                              const std::vector<size_t>& alpha_prime, const std::string& u,
                              const Signature& program_signature) {
    if (x.empty()) {
        throw PreconditionViolation("project_rule: empty variable tuple");
    }
    std::set<std::string> xs(x.begin(), x.end());
    std::set<std::string> head_vars = head_variables(rule);
    for (const std::string& v : xs) {
        if (head_vars.count(v)) {
            throw PreconditionViolation("project_rule: variable " + v + " occurs in the head");
        }
    }
    // x variables must occur in the body, outside every aggregate expression
    std::set<std::string> aggregate_vars;
    std::set<std::string> plain_vars;
    for (const BodyElem& e : rule.body) {
        if (e.kind == BodyElem::Kind::Agg) {
            for (const std::string& v : e.agg.agg_vars) {
                aggregate_vars.insert(v);
            }
            for (const Literal& l : e.agg.conditions) {
                collect_variables(l, aggregate_vars);
            }
        } else {
            collect_variables(e.atom, plain_vars);
        }
    }
    for (const std::string& v : xs) {
        if (aggregate_vars.count(v)) {
            throw PreconditionViolation("project_rule: variable " + v +
                                        " occurs inside an aggregate expression");
        }
        if (!plain_vars.count(v)) {
            throw PreconditionViolation("project_rule: variable " + v + " does not occur in the body");
        }
    }
    if (program_signature.predicates.count(u) || program_signature.function_symbols.count(u) ||
        program_signature.object_constants.count(u)) {
        throw FreshnessViolation("project_rule: symbol " + u + " occurs in the program");
    }

    std::set<size_t> alpha_set(alpha.begin(), alpha.end());
    std::set<size_t> alpha_prime_set(alpha_prime.begin(), alpha_prime.end());
    for (size_t i : alpha_set) {
        if (i >= rule.body.size()) {
            throw PreconditionViolation("project_rule: alpha index out of range");
        }
        if (rule.body[i].kind != BodyElem::Kind::Plain) {
            throw PreconditionViolation("project_rule: alpha must select literals");
        }
    }
    for (size_t i : alpha_prime_set) {
        if (!alpha_set.count(i)) {
            throw PreconditionViolation("project_rule: alpha' must be a subset of alpha");
        }
        std::set<std::string> vs;
        collect_variables(rule.body[i], vs);
        for (const std::string& v : xs) {
            if (vs.count(v)) {
                throw PreconditionViolation("project_rule: alpha' literal mentions a projected variable");
            }
        }
    }
    // alpha must contain every literal mentioning an x variable
    for (size_t i = 0; i < rule.body.size(); ++i) {
        if (rule.body[i].kind != BodyElem::Kind::Plain) {
            continue;
        }
        std::set<std::string> vs;
        collect_variables(rule.body[i], vs);
        bool mentions_x = std::any_of(x.begin(), x.end(), [&](const std::string& v) {
            return vs.count(v) != 0;
        });
        if (mentions_x && !alpha_set.count(i)) {
            throw PreconditionViolation("project_rule: alpha misses a literal containing a projected variable");
        }
    }

    // y: non-x variables of alpha, in order of occurrence
    std::vector<std::string> y;
    std::set<std::string> seen;
    for (size_t i : alpha) {
        std::set<std::string> vs;
        collect_variables(rule.body[i], vs);
        std::function<void(const Term&)> walk = [&](const Term& t) {
            if (t.kind == Term::Kind::Variable) {
                if (!xs.count(t.name) && seen.insert(t.name).second) {
                    y.push_back(t.name);
                }
                return;
            }
            for (const Term& a : t.args) {
                walk(a);
            }
        };
        for (const Term& t : rule.body[i].atom.args) {
            walk(t);
        }
    }
    std::vector<Term> y_terms;
    for (const std::string& v : y) {
        y_terms.push_back(Term::variable(v));
    }
    Atom u_atom = Atom::predicate(u, y_terms);

    ProjectionResult out;
    out.main_rule.head = rule.head;
    for (size_t i = 0; i < rule.body.size(); ++i) {
        if (!alpha_set.count(i)) {
            out.main_rule.body.push_back(rule.body[i]);
        }
    }
    for (size_t i : alpha) {
        if (alpha_prime_set.count(i)) {
            out.main_rule.body.push_back(rule.body[i]);
        }
    }
    out.main_rule.body.push_back(BodyElem::plain(u_atom));

    out.definition_rule.head = Head::disjunction({u_atom});
    for (size_t i : alpha) {
        out.definition_rule.body.push_back(rule.body[i]);
    }
    return out;
}

// --------------------------------------------------------------------------
// Explicit definitions.
// --------------------------------------------------------------------------

namespace {

// Removes `pattern` as a sub-multiset of `body` (exact element equality);
// returns the positions removed, or nullopt.
std::optional<std::vector<size_t>> find_exact_subset(const std::vector<BodyElem>& pattern,
                                                     const std::vector<BodyElem>& body) {
    std::vector<size_t> chosen;
    std::vector<bool> used(body.size(), false);
    for (const BodyElem& p : pattern) {
        bool found = false;
        for (size_t i = 0; i < body.size(); ++i) {
            if (!used[i] && body[i] == p) {
                used[i] = true;
                chosen.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) {
            return std::nullopt;
        }
    }
    return chosen;
}

BodyElem negate_once(const BodyElem& e) {
    BodyElem out = e;
    if (e.kind == BodyElem::Kind::Plain) {
        out.negations += 1;
    } else {
        out.agg_negated = true;
    }
    return out;
}

} // namespace

RewriteResult introduce_definition(const Program& program, const Atom& q,
                                   const std::vector<BodyElem>& def) {
    if (q.kind != Atom::Kind::Predicate) {
        throw PreconditionViolation("introduce_definition: q must be a predicate atom");
    }
    Signature sig = signature(program);
    if (sig.predicates.count(q.pred)) {
        throw FreshnessViolation("introduce_definition: predicate " + q.pred +
                                 " occurs in the program");
    }
    for (const BodyElem& e : def) {
        std::set<std::string> preds;
        if (e.kind == BodyElem::Kind::Plain) {
            if (e.atom.kind == Atom::Kind::Predicate) {
                preds.insert(e.atom.pred);
            }
        } else {
            for (const Literal& l : e.agg.conditions) {
                if (l.atom.kind == Atom::Kind::Predicate) {
                    preds.insert(l.atom.pred);
                }
            }
        }
        if (preds.count(q.pred)) {
            throw PreconditionViolation("introduce_definition: definition mentions " + q.pred);
        }
    }
    std::set<std::string> q_vars;
    collect_variables(q, q_vars);
    std::set<std::string> def_vars;
    for (const BodyElem& e : def) {
        collect_free_variables(e, def_vars);
    }
    for (const std::string& v : q_vars) {
        if (!def_vars.count(v)) {
            throw PreconditionViolation("introduce_definition: variable " + v +
                                        " of q does not occur in the definition");
        }
    }

    RewriteResult res;
    res.report.pass = "introduce-definition";
    res.report.fresh_symbols.push_back(q.pred);

    BodyElem q_elem = BodyElem::plain(q);
    // a singleton definition also matches under one extra negation, which
    // stays representable only below the double-negation limit
    std::optional<BodyElem> negated_single;
    if (def.size() == 1 &&
        (def[0].kind == BodyElem::Kind::Agg ? !def[0].agg_negated : def[0].negations <= 1)) {
        negated_single = negate_once(def[0]);
    }
    for (const Rule& r : program.rules) {
        Rule rewritten = r;
        bool changed = false;
        // replace def occurrences (as a sub-multiset) as often as they appear
        while (true) {
            auto pos = find_exact_subset(def, rewritten.body);
            if (!pos) {
                break;
            }
            std::sort(pos->begin(), pos->end());
            std::vector<BodyElem> next;
            size_t k = 0;
            bool inserted = false;
            for (size_t i = 0; i < rewritten.body.size(); ++i) {
                if (k < pos->size() && (*pos)[k] == i) {
                    ++k;
                    if (!inserted) {
                        next.push_back(q_elem);
                        inserted = true;
                    }
                    continue;
                }
                next.push_back(rewritten.body[i]);
            }
            rewritten.body = std::move(next);
            changed = true;
        }
        if (negated_single) {
            for (BodyElem& e : rewritten.body) {
                if (e == *negated_single) {
                    e = negate_once(q_elem);
                    changed = true;
                }
            }
        }
        if (changed) {
            res.report.removed.push_back(r);
            res.report.added.push_back(rewritten);
        }
        res.program.rules.push_back(std::move(rewritten));
    }
    Rule defining;
    defining.head = Head::disjunction({q});
    defining.body = def;
    res.report.added.push_back(defining);
    res.program.rules.push_back(std::move(defining));
    return res;
}

// --------------------------------------------------------------------------
// Denial interchange and the pass verifier.
// --------------------------------------------------------------------------

DenialInterchangeResult denials_interchangeable(const Program& program, const Rule& r,
                                                const Rule& r2, int depth, int cap) {
    if (classify_rule(r) != RuleClass::Denial || classify_rule(r2) != RuleClass::Denial) {
        throw PreconditionViolation("denials_interchangeable: both rules must be denials");
    }
    Program reduced;
    for (const Rule& rr : program.rules) {
        if (rr == r || rr == r2) {
            continue;
        }
        reduced.rules.push_back(rr);
    }
    Signature sig = signature(reduced);
    sig.merge(signature(Program{{r, r2}}));
    if (sig.object_constants.empty()) {
        sig.object_constants.insert("c0");
    }
    ground::HerbrandUniverse u = ground::herbrand_universe(sig, depth);
    ground::GroundTheory theory = ground::ground_theory_over(reduced, u, 4096);
    fol::FormulaPtr fr = ground::instantiate(fol::fol_of_rule(r), u);
    fol::FormulaPtr fr2 = ground::instantiate(fol::fol_of_rule(r2), u);
    for (const stablemodels::Interpretation& x : stablemodels::answer_sets(theory, cap)) {
        auto holds = [&](const Atom& a) { return x.holds(a); };
        if (fol::eval_classical(fr, holds) != fol::eval_classical(fr2, holds)) {
            return {false, x};
        }
    }
    return {true, std::nullopt};
}

VerifyOutcome verify_rewrite(const Program& before, const Program& after, const VerifyMode& mode,
                             int depth, int cap) {
    VerifyOutcome out;
    out.depth = depth;
    if (mode.kind == VerifyMode::Kind::Same) {
        out.mode = "same";
        auto res = stablemodels::same_answer_sets(before, after, depth, cap);
        out.pass = res.same;
        if (!res.same && res.witness) {
            out.detail = "answer sets differ; witness: " + [&] {
                std::string s = "{";
                bool first = true;
                for (const Atom& a : res.witness->true_atoms) {
                    if (!first) {
                        s += ",";
                    }
                    first = false;
                    s += parser::format_atom(a);
                }
                return s + "}";
            }();
        }
        return out;
    }
    out.mode = "conservative:";
    bool first = true;
    for (const std::string& p : mode.fresh_preds) {
        if (!first) {
            out.mode += ",";
        }
        first = false;
        out.mode += p;
    }
    auto res = stablemodels::conservative_extension_drop(after, before, mode.fresh_preds, depth, cap);
    out.pass = res.conservative;
    out.detail = res.violation;
    return out;
}

} // namespace aspforge::rewrite
