#include "aspforge/parser.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace aspforge::parser {

namespace {

enum class Tok {
    Ident,     // lowercase/underscore/digit start
    Var,       // uppercase start
    If,        // :-
    Dot,
    Comma,
    Pipe,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Eq,
    Neq,
    Leq,
    Count,     // #count
    True,      // #true
    Not,       // keyword `not`
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Var: return "variable";
        case Tok::If: return "':-'";
        case Tok::Dot: return "'.'";
        case Tok::Comma: return "','";
        case Tok::Pipe: return "'|'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Colon: return "':'";
        case Tok::Eq: return "'='";
        case Tok::Neq: return "'!='";
        case Tok::Leq: return "'<='";
        case Tok::Count: return "'#count'";
        case Tok::True: return "'#true'";
        case Tok::Not: return "'not'";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_ = {Tok::End, "", line_, col_};
        if (pos_ >= text_.size()) {
            return;
        }
        char c = text_[pos_];
        int l = line_, col = col_;
        auto single = [&](Tok k, const char* s) {
            bump();
            tok_ = {k, s, l, col};
        };
        if (c == '.') { single(Tok::Dot, "."); return; }
        if (c == ',') { single(Tok::Comma, ","); return; }
        if (c == '|') { single(Tok::Pipe, "|"); return; }
        if (c == '{') { single(Tok::LBrace, "{"); return; }
        if (c == '}') { single(Tok::RBrace, "}"); return; }
        if (c == '(') { single(Tok::LParen, "("); return; }
        if (c == ')') { single(Tok::RParen, ")"); return; }
        if (c == '=') { single(Tok::Eq, "="); return; }
        if (c == ':') {
            bump();
            if (pos_ < text_.size() && text_[pos_] == '-') {
                bump();
                tok_ = {Tok::If, ":-", l, col};
            } else {
                tok_ = {Tok::Colon, ":", l, col};
            }
            return;
        }
        if (c == '!') {
            bump();
            if (pos_ < text_.size() && text_[pos_] == '=') {
                bump();
                tok_ = {Tok::Neq, "!=", l, col};
                return;
            }
            throw ParseError(l, col, "'!='", "'!'");
        }
        if (c == '<') {
            bump();
            if (pos_ < text_.size() && text_[pos_] == '=') {
                bump();
                tok_ = {Tok::Leq, "<=", l, col};
                return;
            }
            throw ParseError(l, col, "'<='", "'<'");
        }
        if (c == '#') {
            bump();
            std::string word;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                word += text_[pos_];
                bump();
            }
            if (word == "count") {
                tok_ = {Tok::Count, "#count", l, col};
            } else if (word == "true") {
                tok_ = {Tok::True, "#true", l, col};
            } else {
                throw ParseError(l, col, "'#count' or '#true'", "#" + word);
            }
            return;
        }
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                word += text_[pos_];
                bump();
            }
            if (word == "not") {
                tok_ = {Tok::Not, word, l, col};
            } else if (std::isupper(static_cast<unsigned char>(word[0]))) {
                tok_ = {Tok::Var, word, l, col};
            } else {
                tok_ = {Tok::Ident, word, l, col};
            }
            return;
        }
        throw ParseError(l, col, "a token", std::string(1, c));
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    bump();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_{Tok::End, "", 1, 1};
};

class RuleParser {
public:
    explicit RuleParser(Lexer& lex) : lex_(lex) {}

    Program program() {
        Program p;
        while (lex_.peek().kind != Tok::End) {
            p.rules.push_back(rule());
        }
        return p;
    }

    Rule rule() {
        Rule r;
        const Token& t = lex_.peek();
        if (t.kind == Tok::If) {
            lex_.next();
            r.head = Head::denial();
            r.body = body();
        } else {
            r.head = head();
            if (lex_.peek().kind == Tok::If) {
                lex_.next();
                r.body = body();
            }
        }
        expect(Tok::Dot);
        return r;
    }

private:
    Head head() {
        if (lex_.peek().kind == Tok::LBrace) {
            lex_.next();
            Atom a = pred_atom();
            expect(Tok::RBrace);
            return Head::choice(std::move(a));
        }
        std::vector<Atom> atoms;
        atoms.push_back(pred_atom());
        while (lex_.peek().kind == Tok::Pipe) {
            lex_.next();
            atoms.push_back(pred_atom());
        }
        return Head::disjunction(std::move(atoms));
    }

    std::vector<BodyElem> body() {
        std::vector<BodyElem> elems;
        elems.push_back(body_elem());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.next();
            elems.push_back(body_elem());
        }
        return elems;
    }

    BodyElem body_elem() {
        int nots = 0;
        while (lex_.peek().kind == Tok::Not) {
            lex_.next();
            ++nots;
            if (nots > 2) {
                const Token& t = lex_.peek();
                throw ParseError(t.line, t.column, "at most two 'not'", "'not'");
            }
        }
        if (lex_.peek().kind == Tok::Ident && is_integer(lex_.peek().text)) {
            // Could be an aggregate bound or a term starting an equality.
            Token save = lex_.peek();
            Term first = term();
            if (lex_.peek().kind == Tok::Leq) {
                lex_.next();
                if (first.kind != Term::Kind::Constant || !is_integer(first.name)) {
                    throw ParseError(save.line, save.column, "positive integer bound", save.text);
                }
                int bound = std::stoi(first.name);
                if (bound < 1) {
                    throw ParseError(save.line, save.column, "bound >= 1", first.name);
                }
                AggregateExpr agg = aggregate_tail(bound, save);
                if (nots > 1) {
                    throw ParseError(save.line, save.column, "single 'not' before aggregate", "'not not'");
                }
                return BodyElem::aggregate(std::move(agg), nots == 1);
            }
            return equality_tail(std::move(first), nots, save);
        }
        const Token& t = lex_.peek();
        if (t.kind == Tok::True) {
            lex_.next();
            return BodyElem::plain(Atom::truth(), nots);
        }
        if (t.kind == Tok::Var) {
            Token save = lex_.peek();
            Term first = term();
            return equality_tail(std::move(first), nots, save);
        }
        if (t.kind != Tok::Ident) {
            throw ParseError(t.line, t.column, "a body element", t.text.empty() ? tok_name(t.kind) : t.text);
        }
        // Identifier: predicate atom or left side of an equality.
        Token save = lex_.peek();
        Term first = term();
        if (lex_.peek().kind == Tok::Eq || lex_.peek().kind == Tok::Neq) {
            return equality_tail(std::move(first), nots, save);
        }
        // Plain predicate atom.
        Atom a = first.kind == Term::Kind::Compound
                     ? Atom::predicate(first.name, std::move(first.args))
                     : Atom::predicate(first.name);
        return BodyElem::plain(std::move(a), nots);
    }

    BodyElem equality_tail(Term first, int nots, const Token& at) {
        if (lex_.peek().kind == Tok::Eq) {
            lex_.next();
            Term rhs = term();
            return BodyElem::plain(Atom::equality(std::move(first), std::move(rhs)), nots);
        }
        if (lex_.peek().kind == Tok::Neq) {
            lex_.next();
            Term rhs = term();
            if (nots + 1 > 2) {
                throw ParseError(at.line, at.column, "at most one 'not' before '!='", "'not not'");
            }
            return BodyElem::plain(Atom::equality(std::move(first), std::move(rhs)), nots + 1);
        }
        const Token& t = lex_.peek();
        throw ParseError(t.line, t.column, "'=' or '!='", t.text.empty() ? tok_name(t.kind) : t.text);
    }

    AggregateExpr aggregate_tail(int bound, const Token& at) {
        expect(Tok::Count);
        expect(Tok::LBrace);
        AggregateExpr agg;
        agg.bound = bound;
        agg.agg_vars.push_back(expect(Tok::Var).text);
        while (lex_.peek().kind == Tok::Comma) {
            lex_.next();
            agg.agg_vars.push_back(expect(Tok::Var).text);
        }
        for (size_t i = 0; i < agg.agg_vars.size(); ++i) {
            for (size_t j = i + 1; j < agg.agg_vars.size(); ++j) {
                if (agg.agg_vars[i] == agg.agg_vars[j]) {
                    throw ParseError(at.line, at.column, "pairwise distinct aggregate variables",
                                     agg.agg_vars[i]);
                }
            }
        }
        expect(Tok::Colon);
        agg.conditions.push_back(condition_literal());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.next();
            agg.conditions.push_back(condition_literal());
        }
        expect(Tok::RBrace);
        return agg;
    }

    Literal condition_literal() {
        bool neg = false;
        if (lex_.peek().kind == Tok::Not) {
            lex_.next();
            neg = true;
        }
        if (lex_.peek().kind == Tok::True) {
            lex_.next();
            return Literal{Atom::truth(), neg};
        }
        Term first = term();
        if (lex_.peek().kind == Tok::Eq) {
            lex_.next();
            Term rhs = term();
            return Literal{Atom::equality(std::move(first), std::move(rhs)), neg};
        }
        if (lex_.peek().kind == Tok::Neq) {
            lex_.next();
            Term rhs = term();
            if (neg) {
                const Token& t = lex_.peek();
                throw ParseError(t.line, t.column, "at most one negation in a condition", "'not' with '!='");
            }
            return Literal{Atom::equality(std::move(first), std::move(rhs)), true};
        }
        if (first.kind == Term::Kind::Variable) {
            const Token& t = lex_.peek();
            throw ParseError(t.line, t.column, "'=' or '!='", t.text.empty() ? tok_name(t.kind) : t.text);
        }
        Atom a = first.kind == Term::Kind::Compound
                     ? Atom::predicate(first.name, std::move(first.args))
                     : Atom::predicate(first.name);
        return Literal{std::move(a), neg};
    }

    Atom pred_atom() {
        Token t = expect(Tok::Ident);
        std::vector<Term> args;
        if (lex_.peek().kind == Tok::LParen) {
            lex_.next();
            args.push_back(term());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                args.push_back(term());
            }
            expect(Tok::RParen);
        }
        return Atom::predicate(t.text, std::move(args));
    }

    Term term() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Var) {
            return Term::variable(lex_.next().text);
        }
        if (t.kind != Tok::Ident) {
            throw ParseError(t.line, t.column, "a term", t.text.empty() ? tok_name(t.kind) : t.text);
        }
        Token name = lex_.next();
        if (lex_.peek().kind == Tok::LParen) {
            lex_.next();
            std::vector<Term> args;
            args.push_back(term());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                args.push_back(term());
            }
            expect(Tok::RParen);
            return Term::compound(name.text, std::move(args));
        }
        return Term::constant(name.text);
    }

    Token expect(Tok kind) {
        const Token& t = lex_.peek();
        if (t.kind != kind) {
            throw ParseError(t.line, t.column, tok_name(kind),
                             t.kind == Tok::End ? "end of input" : t.text);
        }
        return lex_.next();
    }

    static bool is_integer(const std::string& s) {
        if (s.empty()) {
            return false;
        }
        return std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    Lexer& lex_;
};

void check_arities(const Program& p) {
    std::map<std::string, int> pred_arity;
    std::map<std::string, int> fun_arity;
    auto see_pred = [&](const Atom& a) {
        if (a.kind != Atom::Kind::Predicate) {
            return;
        }
        auto [it, fresh] = pred_arity.emplace(a.pred, static_cast<int>(a.args.size()));
        if (!fresh && it->second != static_cast<int>(a.args.size())) {
            throw ParseError(1, 1, "consistent arity for predicate " + a.pred,
                             std::to_string(a.args.size()) + " vs " + std::to_string(it->second));
        }
    };
    std::function<void(const Term&)> see_term = [&](const Term& t) {
        if (t.kind == Term::Kind::Compound) {
            auto [it, fresh] = fun_arity.emplace(t.name, static_cast<int>(t.args.size()));
            if (!fresh && it->second != static_cast<int>(t.args.size())) {
                throw ParseError(1, 1, "consistent arity for function " + t.name,
                                 std::to_string(t.args.size()) + " vs " + std::to_string(it->second));
            }
        }
        for (const Term& a : t.args) {
            see_term(a);
        }
    };
    auto see_atom = [&](const Atom& a) {
        see_pred(a);
        for (const Term& t : a.args) {
            see_term(t);
        }
    };
    for (const Rule& r : p.rules) {
        for (const Atom& a : r.head.atoms) {
            see_atom(a);
        }
        for (const BodyElem& e : r.body) {
            if (e.kind == BodyElem::Kind::Plain) {
                see_atom(e.atom);
            } else {
                for (const Literal& l : e.agg.conditions) {
                    see_atom(l.atom);
                }
            }
        }
    }
}

} // namespace

ParseError::ParseError(int line_, int column_, std::string expected_, std::string found_)
    : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) +
            ": expected " + expected_ + ", found '" + found_ + "'"),
      line(line_),
      column(column_),
      expected(std::move(expected_)),
      found(std::move(found_)) {}

Program parse_program(std::string_view text) {
    Lexer lex(text);
    RuleParser p(lex);
    Program prog = p.program();
    check_arities(prog);
    return prog;
}

Rule parse_rule(std::string_view text) {
    Lexer lex(text);
    RuleParser p(lex);
    Rule r = p.rule();
    if (lex.peek().kind != Tok::End) {
        const Token t = lex.peek();
        throw ParseError(t.line, t.column, "end of input", t.text);
    }
    return r;
}

std::string format_term(const Term& term) {
    std::string out = term.name;
    if (term.kind == Term::Kind::Compound) {
        out += "(";
        for (size_t i = 0; i < term.args.size(); ++i) {
            if (i) {
                out += ",";
            }
            out += format_term(term.args[i]);
        }
        out += ")";
    }
    return out;
}

std::string format_atom(const Atom& atom) {
    switch (atom.kind) {
        case Atom::Kind::Truth:
            return "#true";
        case Atom::Kind::Equality:
            return format_term(atom.args[0]) + " = " + format_term(atom.args[1]);
        case Atom::Kind::Predicate: {
            std::string out = atom.pred;
            if (!atom.args.empty()) {
                out += "(";
                for (size_t i = 0; i < atom.args.size(); ++i) {
                    if (i) {
                        out += ",";
                    }
                    out += format_term(atom.args[i]);
                }
                out += ")";
            }
            return out;
        }
    }
    return "";
}

namespace {

std::string format_literal(const Literal& lit) {
    if (lit.atom.kind == Atom::Kind::Equality && lit.negated) {
        return format_term(lit.atom.args[0]) + " != " + format_term(lit.atom.args[1]);
    }
    return (lit.negated ? "not " : "") + format_atom(lit.atom);
}

} // namespace

std::string format_body_elem(const BodyElem& elem) {
    if (elem.kind == BodyElem::Kind::Plain) {
        if (elem.atom.kind == Atom::Kind::Equality && elem.negations == 1) {
            return format_term(elem.atom.args[0]) + " != " + format_term(elem.atom.args[1]);
        }
        std::string prefix;
        for (int i = 0; i < elem.negations; ++i) {
            prefix += "not ";
        }
        return prefix + format_atom(elem.atom);
    }
    std::string out = elem.agg_negated ? "not " : "";
    out += std::to_string(elem.agg.bound) + " <= #count{";
    for (size_t i = 0; i < elem.agg.agg_vars.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += elem.agg.agg_vars[i];
    }
    out += " : ";
    for (size_t i = 0; i < elem.agg.conditions.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += format_literal(elem.agg.conditions[i]);
    }
    out += "}";
    return out;
}

std::string format_rule(const Rule& rule) {
    std::string out;
    if (rule.head.kind == Head::Kind::Choice) {
        out += "{" + format_atom(rule.head.atoms[0]) + "}";
    } else {
        for (size_t i = 0; i < rule.head.atoms.size(); ++i) {
            if (i) {
                out += " | ";
            }
            out += format_atom(rule.head.atoms[i]);
        }
    }
    if (!rule.body.empty()) {
        if (!out.empty()) {
            out += " ";
        }
        out += ":- ";
        for (size_t i = 0; i < rule.body.size(); ++i) {
            if (i) {
                out += ", ";
            }
            out += format_body_elem(rule.body[i]);
        }
    }
    out += ".";
    return out;
}

std::string format_program(const Program& program) {
    std::string out;
    for (const Rule& r : program.rules) {
        out += format_rule(r);
        out += "\n";
    }
    return out;
}

} // namespace aspforge::parser
