#pragma once
// Recursive-descent parser for polynomial expressions over a session field.
//
// Grammar (explicit '*' required between factors; '^' binds tighter than
// unary '-'):
//   expr     := term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := '-' factor | power
//   power    := atom ['^' exponent]
//   atom     := INTEGER | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//   exponent := INTEGER | '(' ['-'] INTEGER ['/' INTEGER] ')'
//
// Exponents must come out as nonnegative integers; negative or fractional
// exponent literals are rejected as NonPolynomial (they are well-formed,
// just not polynomials), while everything else malformed is a SyntaxError
// carrying the line and column of the offending token.

#include <array>
#include <map>
#include <string>

#include "compoly/bipoly.hpp"
#include "compoly/field.hpp"
#include "compoly/unipoly.hpp"

namespace compoly {

// Expression value: exponent vectors over the variables (x, y, z, t).
struct ParsedPoly {
    using Key = std::array<long, 4>; // exponents of x, y, z, t
    FieldCtx ctx;
    std::map<Key, FieldElement> terms; // zero coefficients pruned

    bool operator==(const ParsedPoly& other) const { return terms == other.terms; }
};

ParsedPoly parse_poly(const std::string& src, const FieldCtx& ctx);

// Conversions for command inputs (UsageError on out-of-place variables).
BivariatePoly to_bivariate(const ParsedPoly& p); // variables x and y only
UnivariatePoly to_univariate(const ParsedPoly& p); // at most one variable

} // namespace compoly
