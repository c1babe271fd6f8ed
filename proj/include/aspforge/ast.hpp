#ifndef ASPFORGE_AST_HPP
#define ASPFORGE_AST_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace aspforge {

// ---------------------------------------------------------------------------
// Errors shared across modules.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

class NotApplicable : public Error {
public:
    explicit NotApplicable(const std::string& what) : Error(what) {}
};

class FreshnessViolation : public Error {
public:
    explicit FreshnessViolation(const std::string& what) : Error(what) {}
};

class PreconditionViolation : public Error {
public:
    explicit PreconditionViolation(const std::string& what) : Error(what) {}
};

// ---------------------------------------------------------------------------
// Terms, atoms, literals.
// ---------------------------------------------------------------------------

struct Term {
    enum class Kind { Constant, Variable, Compound };

    Kind kind = Kind::Constant;
    std::string name;
    std::vector<Term> args; // Compound only, arity >= 1

    static Term constant(std::string n) { return {Kind::Constant, std::move(n), {}}; }
    static Term variable(std::string n) { return {Kind::Variable, std::move(n), {}}; }
    static Term compound(std::string f, std::vector<Term> a) {
        return {Kind::Compound, std::move(f), std::move(a)};
    }

    bool is_ground() const;

    // hand-written: a defaulted <=> on a self-referential type trips gcc 11
    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.name == b.name && a.args == b.args;
    }
    friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
        if (auto c = a.kind <=> b.kind; c != 0) {
            return c;
        }
        if (auto c = a.name <=> b.name; c != 0) {
            return c;
        }
        if (auto c = a.args.size() <=> b.args.size(); c != 0) {
            return c;
        }
        for (size_t i = 0; i < a.args.size(); ++i) {
            if (auto c = a.args[i] <=> b.args[i]; c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }
};

struct Atom {
    // Predicate atoms p(t1,...,tn), equality t1 = t2 and a dedicated truth
    // atom usable wherever atoms are.
    enum class Kind { Predicate, Equality, Truth };

    Kind kind = Kind::Truth;
    std::string pred;        // Predicate only
    std::vector<Term> args;  // Predicate: n >= 0; Equality: exactly 2

    static Atom predicate(std::string p, std::vector<Term> a = {}) {
        return {Kind::Predicate, std::move(p), std::move(a)};
    }
    static Atom equality(Term l, Term r) {
        return {Kind::Equality, "", {std::move(l), std::move(r)}};
    }
    static Atom truth() { return {Kind::Truth, "", {}}; }

    bool is_ground() const;

    friend auto operator<=>(const Atom&, const Atom&) = default;
};

// An atom preceded by at most one `not` (aggregate conditions, C-style uses).
struct Literal {
    Atom atom;
    bool negated = false;

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

// b <= #count{ x1,...,xm : L1,...,Lk }
struct AggregateExpr {
    int bound = 1;                        // b >= 1
    std::vector<std::string> agg_vars;    // nonempty, pairwise distinct
    std::vector<Literal> conditions;      // nonempty

    friend auto operator<=>(const AggregateExpr&, const AggregateExpr&) = default;
};

// One element of a rule body.  Plain atoms carry a negation count so that
// `a`, `not a` and `not not a` are all representable; aggregates carry the
// single outer `not` of the body form.
struct BodyElem {
    enum class Kind { Plain, Agg };

    Kind kind = Kind::Plain;
    Atom atom;               // Plain
    int negations = 0;       // Plain: 0, 1 or 2
    AggregateExpr agg;       // Agg
    bool agg_negated = false;

    static BodyElem plain(Atom a, int neg = 0) {
        BodyElem e;
        e.kind = Kind::Plain;
        e.atom = std::move(a);
        e.negations = neg;
        return e;
    }
    static BodyElem aggregate(AggregateExpr a, bool neg = false) {
        BodyElem e;
        e.kind = Kind::Agg;
        e.agg = std::move(a);
        e.agg_negated = neg;
        return e;
    }

    friend auto operator<=>(const BodyElem&, const BodyElem&) = default;
};

struct Head {
    enum class Kind { Disjunction, Choice };

    Kind kind = Kind::Disjunction;
    std::vector<Atom> atoms; // Disjunction: possibly empty (denial); Choice: exactly 1

    static Head disjunction(std::vector<Atom> a) { return {Kind::Disjunction, std::move(a)}; }
    static Head choice(Atom a) { return {Kind::Choice, {std::move(a)}}; }
    static Head denial() { return {Kind::Disjunction, {}}; }

    friend auto operator<=>(const Head&, const Head&) = default;
};

struct Rule {
    Head head;
    std::vector<BodyElem> body;

    friend auto operator<=>(const Rule&, const Rule&) = default;
};

struct Program {
    std::vector<Rule> rules;

    friend auto operator<=>(const Program&, const Program&) = default;
};

// ---------------------------------------------------------------------------
// Signatures.
// ---------------------------------------------------------------------------

struct Signature {
    std::set<std::string> object_constants;
    std::map<std::string, int> function_symbols; // arity >= 1
    std::map<std::string, int> predicates;       // equality excluded

    Signature& merge(const Signature& other);

    friend auto operator<=>(const Signature&, const Signature&) = default;
};

Signature signature(const Program& program);
void collect_signature(const Term& term, Signature& sig);
void collect_signature(const Atom& atom, Signature& sig);

// ---------------------------------------------------------------------------
// Syntactic classifiers.
// ---------------------------------------------------------------------------

enum class RuleClass { Denial, Defining, ChoiceRule, DisjunctiveRule };

RuleClass classify_rule(const Rule& rule);

// True iff heads coincide and body(sub) extends body(r) by extra elements
// (bodies compared as multisets).
bool subsumes(const Rule& r, const Rule& sub);

// i-terminal rank of a predicate, or nullopt when the predicate is not
// terminal.  The recursion follows head occurrences: rank 0 when every rule
// with the predicate in its head has an empty body, rank i+1 when all such
// rules are simple with positive body predicates of rank <= i, at least one
// of them exactly i.
std::optional<int> terminal_rank(const Program& program, const std::string& predicate);

// A simple body contains only plain literals with at most one negation.
bool is_simple_rule(const Rule& rule);

// ---------------------------------------------------------------------------
// Variable utilities.
// ---------------------------------------------------------------------------

void collect_variables(const Term& t, std::set<std::string>& out);
void collect_variables(const Atom& a, std::set<std::string>& out);
void collect_variables(const Literal& l, std::set<std::string>& out);
void collect_variables(const BodyElem& e, std::set<std::string>& out);
std::set<std::string> rule_variables(const Rule& rule);
std::set<std::string> head_variables(const Rule& rule);

// Variables of a body element that are not bound by an aggregate.
void collect_free_variables(const BodyElem& e, std::set<std::string>& out);

Term substitute_term(const Term& t, const std::map<std::string, Term>& sub);
Atom substitute_atom(const Atom& a, const std::map<std::string, Term>& sub);

} // namespace aspforge

#endif
