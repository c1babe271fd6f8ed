#include "aspforge/formula.hpp"

#include "aspforge/parser.hpp"

#include <algorithm>
#include <functional>

namespace aspforge::fol {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

} // namespace

FormulaPtr f_bot() {
    static const FormulaPtr bot = make(Formula{});
    return bot;
}

FormulaPtr f_top() {
    static const FormulaPtr top = f_implies(f_bot(), f_bot());
    return top;
}

FormulaPtr f_atom(Atom a) {
    if (a.kind == Atom::Kind::Truth) {
        return f_top();
    }
    Formula f;
    f.kind = Formula::Kind::Atom;
    f.atom = std::move(a);
    return make(std::move(f));
}

FormulaPtr f_and(std::vector<FormulaPtr> parts) {
    if (parts.empty()) {
        return f_top();
    }
    if (parts.size() == 1) {
        return parts[0];
    }
    Formula f;
    f.kind = Formula::Kind::And;
    f.parts = std::move(parts);
    return make(std::move(f));
}

FormulaPtr f_or(std::vector<FormulaPtr> parts) {
    if (parts.empty()) {
        return f_bot();
    }
    if (parts.size() == 1) {
        return parts[0];
    }
    Formula f;
    f.kind = Formula::Kind::Or;
    f.parts = std::move(parts);
    return make(std::move(f));
}

FormulaPtr f_implies(FormulaPtr lhs, FormulaPtr rhs) {
    Formula f;
    f.kind = Formula::Kind::Implies;
    f.parts = {std::move(lhs), std::move(rhs)};
    return make(std::move(f));
}

FormulaPtr f_not(FormulaPtr f) { return f_implies(std::move(f), f_bot()); }

FormulaPtr f_iff(FormulaPtr lhs, FormulaPtr rhs) {
    return f_and({f_implies(lhs, rhs), f_implies(rhs, lhs)});
}

FormulaPtr f_forall(std::vector<std::string> vars, FormulaPtr body) {
    if (vars.empty()) {
        return body;
    }
    Formula f;
    f.kind = Formula::Kind::Forall;
    f.vars = std::move(vars);
    f.body = std::move(body);
    return make(std::move(f));
}

FormulaPtr f_exists(std::vector<std::string> vars, FormulaPtr body) {
    if (vars.empty()) {
        return body;
    }
    Formula f;
    f.kind = Formula::Kind::Exists;
    f.vars = std::move(vars);
    f.body = std::move(body);
    return make(std::move(f));
}

bool is_not(const Formula& f) {
    return f.kind == Formula::Kind::Implies && f.parts[1]->kind == Formula::Kind::Bottom;
}

bool is_top(const Formula& f) {
    return is_not(f) && f.parts[0]->kind == Formula::Kind::Bottom;
}

bool equal(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
        case Formula::Kind::Bottom:
            return true;
        case Formula::Kind::Atom:
            return a.atom == b.atom;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            if (a.parts.size() != b.parts.size()) {
                return false;
            }
            for (size_t i = 0; i < a.parts.size(); ++i) {
                if (!equal(*a.parts[i], *b.parts[i])) {
                    return false;
                }
            }
            return true;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return a.vars == b.vars && equal(*a.body, *b.body);
    }
    return false;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    return a == b || equal(*a, *b);
}

namespace {

bool alpha_equal_term(const Term& a, const Term& b,
                      const std::map<std::string, std::string>& la,
                      const std::map<std::string, std::string>& lb) {
    if (a.kind != b.kind) {
        return false;
    }
    if (a.kind == Term::Kind::Variable) {
        auto ia = la.find(a.name);
        auto ib = lb.find(b.name);
        if (ia != la.end() || ib != lb.end()) {
            return ia != la.end() && ib != lb.end() && ia->second == ib->second;
        }
        return a.name == b.name; // both free
    }
    if (a.name != b.name || a.args.size() != b.args.size()) {
        return false;
    }
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (!alpha_equal_term(a.args[i], b.args[i], la, lb)) {
            return false;
        }
    }
    return true;
}

bool alpha_equal_atom(const Atom& a, const Atom& b,
                      const std::map<std::string, std::string>& la,
                      const std::map<std::string, std::string>& lb) {
    if (a.kind != b.kind || a.pred != b.pred || a.args.size() != b.args.size()) {
        return false;
    }
    for (size_t i = 0; i < a.args.size(); ++i) {
        if (!alpha_equal_term(a.args[i], b.args[i], la, lb)) {
            return false;
        }
    }
    return true;
}

bool alpha_equal_rec(const Formula& a, const Formula& b,
                     std::map<std::string, std::string> la,
                     std::map<std::string, std::string> lb, int& counter) {
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
        case Formula::Kind::Bottom:
            return true;
        case Formula::Kind::Atom:
            return alpha_equal_atom(a.atom, b.atom, la, lb);
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies: {
            if (a.parts.size() != b.parts.size()) {
                return false;
            }
            for (size_t i = 0; i < a.parts.size(); ++i) {
                if (!alpha_equal_rec(*a.parts[i], *b.parts[i], la, lb, counter)) {
                    return false;
                }
            }
            return true;
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            if (a.vars.size() != b.vars.size()) {
                return false;
            }
            for (size_t i = 0; i < a.vars.size(); ++i) {
                std::string fresh = "#" + std::to_string(counter++);
                la[a.vars[i]] = fresh;
                lb[b.vars[i]] = fresh;
            }
            return alpha_equal_rec(*a.body, *b.body, la, lb, counter);
        }
    }
    return false;
}

} // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
    int counter = 0;
    return alpha_equal_rec(*a, *b, {}, {}, counter);
}

namespace {

void free_vars_rec(const Formula& f, std::set<std::string> bound, std::set<std::string>& out) {
    switch (f.kind) {
        case Formula::Kind::Bottom:
            return;
        case Formula::Kind::Atom: {
            std::set<std::string> vs;
            collect_variables(f.atom, vs);
            for (const std::string& v : vs) {
                if (!bound.count(v)) {
                    out.insert(v);
                }
            }
            return;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            for (const FormulaPtr& p : f.parts) {
                free_vars_rec(*p, bound, out);
            }
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            for (const std::string& v : f.vars) {
                bound.insert(v);
            }
            free_vars_rec(*f.body, bound, out);
            return;
    }
}

} // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
    std::set<std::string> out;
    free_vars_rec(*f, {}, out);
    return out;
}

void collect_atoms(const FormulaPtr& f, std::set<Atom>& out) {
    switch (f->kind) {
        case Formula::Kind::Bottom:
            return;
        case Formula::Kind::Atom:
            if (f->atom.kind == Atom::Kind::Predicate) {
                out.insert(f->atom);
            }
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
            for (const FormulaPtr& p : f->parts) {
                collect_atoms(p, out);
            }
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            collect_atoms(f->body, out);
            return;
    }
}

std::set<std::string> predicates_of(const FormulaPtr& f) {
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.kind == Formula::Kind::Atom) {
            if (g.atom.kind == Atom::Kind::Predicate) {
                out.insert(g.atom.pred);
            }
            return;
        }
        for (const FormulaPtr& p : g.parts) {
            walk(*p);
        }
        if (g.body) {
            walk(*g.body);
        }
    };
    walk(*f);
    return out;
}

FormulaPtr substitute(const FormulaPtr& f, const std::map<std::string, Term>& sub) {
    switch (f->kind) {
        case Formula::Kind::Bottom:
            return f;
        case Formula::Kind::Atom:
            return f_atom(substitute_atom(f->atom, sub));
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies: {
            std::vector<FormulaPtr> parts;
            parts.reserve(f->parts.size());
            for (const FormulaPtr& p : f->parts) {
                parts.push_back(substitute(p, sub));
            }
            Formula out;
            out.kind = f->kind;
            out.parts = std::move(parts);
            return make(std::move(out));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            std::map<std::string, Term> inner = sub;
            for (const std::string& v : f->vars) {
                inner.erase(v);
            }
            Formula out;
            out.kind = f->kind;
            out.vars = f->vars;
            out.body = substitute(f->body, inner);
            return make(std::move(out));
        }
    }
    return f;
}

namespace {

// Precedence: quantifiers/implication lowest, then |, &, ~ highest.
int precedence(const Formula& f) {
    if (is_not(f)) {
        return 4;
    }
    switch (f.kind) {
        case Formula::Kind::Bottom:
        case Formula::Kind::Atom:
            return 5;
        case Formula::Kind::And:
            return 3;
        case Formula::Kind::Or:
            return 2;
        case Formula::Kind::Implies:
            return 1;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return 0;
    }
    return 5;
}

void print_rec(const Formula& f, int parent_prec, std::string& out) {
    int prec = precedence(f);
    bool parens = prec < parent_prec;
    if (parens) {
        out += "(";
    }
    if (is_top(f)) {
        out += "top";
    } else if (is_not(f)) {
        out += "~";
        print_rec(*f.parts[0], 5, out);
    } else {
        switch (f.kind) {
            case Formula::Kind::Bottom:
                out += "bot";
                break;
            case Formula::Kind::Atom:
                out += parser::format_atom(f.atom);
                break;
            case Formula::Kind::And:
                for (size_t i = 0; i < f.parts.size(); ++i) {
                    if (i) {
                        out += " & ";
                    }
                    print_rec(*f.parts[i], prec + 1, out);
                }
                break;
            case Formula::Kind::Or:
                for (size_t i = 0; i < f.parts.size(); ++i) {
                    if (i) {
                        out += " | ";
                    }
                    print_rec(*f.parts[i], prec + 1, out);
                }
                break;
            case Formula::Kind::Implies:
                print_rec(*f.parts[0], prec + 1, out);
                out += " -> ";
                print_rec(*f.parts[1], prec, out);
                break;
            case Formula::Kind::Forall:
            case Formula::Kind::Exists:
                out += f.kind == Formula::Kind::Forall ? "forall" : "exists";
                for (const std::string& v : f.vars) {
                    out += " " + v;
                }
                out += " (";
                print_rec(*f.body, 0, out);
                out += ")";
                break;
        }
    }
    if (parens) {
        out += ")";
    }
}

} // namespace

std::string to_string(const FormulaPtr& f) {
    std::string out;
    print_rec(*f, 0, out);
    return out;
}

bool eval_classical(const FormulaPtr& f, const std::function<bool(const Atom&)>& holds) {
    switch (f->kind) {
        case Formula::Kind::Bottom:
            return false;
        case Formula::Kind::Atom:
            if (f->atom.kind == Atom::Kind::Truth) {
                return true;
            }
            if (f->atom.kind == Atom::Kind::Equality) {
                return f->atom.args[0] == f->atom.args[1];
            }
            return holds(f->atom);
        case Formula::Kind::And:
            for (const FormulaPtr& p : f->parts) {
                if (!eval_classical(p, holds)) {
                    return false;
                }
            }
            return true;
        case Formula::Kind::Or:
            for (const FormulaPtr& p : f->parts) {
                if (eval_classical(p, holds)) {
                    return true;
                }
            }
            return false;
        case Formula::Kind::Implies:
            return !eval_classical(f->parts[0], holds) || eval_classical(f->parts[1], holds);
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            throw Error("eval_classical: formula is not variable-free");
    }
    return false;
}

} // namespace aspforge::fol
