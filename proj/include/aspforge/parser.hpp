#ifndef ASPFORGE_PARSER_HPP
#define ASPFORGE_PARSER_HPP

#include "aspforge/ast.hpp"

#include <string>
#include <string_view>

namespace aspforge::parser {

struct ParseError : Error {
    int line = 1;   // 1-based
    int column = 1; // 1-based
    std::string expected;
    std::string found;

    ParseError(int line_, int column_, std::string expected_, std::string found_);
};

// Parses a RASPL-1 program.  Grammar: facts `p(a).`; rules `H :- e1, ..., en.`;
// `not`/`not not` prefixes on plain elements, `not` on aggregates; heads
// `a1 | ... | al`, `{a}` or empty (`:- body.`); aggregates
// `b <= #count{X1,...,Xm : l1,...,lk}`; `t1 != t2` sugar for `not t1 = t2`;
// identifiers starting with an uppercase letter are variables; `%` starts a
// line comment.  Throws ParseError on malformed input.
Program parse_program(std::string_view text);

Rule parse_rule(std::string_view text); // single statement, for tests/tools

// Canonical text; parse_program(format_program(p)) is structurally equal to p.
std::string format_program(const Program& program);
std::string format_rule(const Rule& rule);
std::string format_atom(const Atom& atom);
std::string format_term(const Term& term);
std::string format_body_elem(const BodyElem& elem);

} // namespace aspforge::parser

#endif
