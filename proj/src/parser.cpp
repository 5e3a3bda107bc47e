#include "compoly/parser.hpp"

#include <cctype>
#include <cstring>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "compoly/error.hpp"

namespace compoly {

namespace {

struct Token {
    enum Kind { integer, variable, plus, minus, star, caret, slash, lparen, rparen, end };
    Kind kind;
    Int value;  // integer literals
    int var;    // index into "xyzt"
    long line;
    long column;
};

const char* token_name(Token::Kind k) {
    switch (k) {
        case Token::integer: return "number";
        case Token::variable: return "variable";
        case Token::plus: return "'+'";
        case Token::minus: return "'-'";
        case Token::star: return "'*'";
        case Token::caret: return "'^'";
        case Token::slash: return "'/'";
        case Token::lparen: return "'('";
        case Token::rparen: return "')'";
        case Token::end: return "end of input";
    }
    return "token";
}

[[noreturn]] void syntax_error(const Token& at, const std::string& what) {
    fail(Errc::SyntaxError, "syntax error at line " + std::to_string(at.line) + ", column " +
                                std::to_string(at.column) + ": " + what);
}

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    long line = 1;
    long column = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            column = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++column;
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::integer, Int(src.substr(i, j - i), 10), 0, line, column});
            column += static_cast<long>(j - i);
            i = j;
            continue;
        }
        Token t{Token::end, Int(0), 0, line, column};
        switch (c) {
            case '+': t.kind = Token::plus; break;
            case '-': t.kind = Token::minus; break;
            case '*': t.kind = Token::star; break;
            case '^': t.kind = Token::caret; break;
            case '/': t.kind = Token::slash; break;
            case '(': t.kind = Token::lparen; break;
            case ')': t.kind = Token::rparen; break;
            default: {
                const char* vars = "xyzt";
                const char* hit = std::strchr(vars, c);
                if (hit != nullptr && c != '\0') {
                    t.kind = Token::variable;
                    t.var = static_cast<int>(hit - vars);
                    break;
                }
                syntax_error(t, std::isalpha(static_cast<unsigned char>(c))
                                    ? std::string("unknown variable '") + c +
                                          "' (the variables are x, y, z, t)"
                                    : std::string("unexpected character '") + c + "'");
            }
        }
        out.push_back(t);
        ++column;
        ++i;
    }
    out.push_back({Token::end, Int(0), 0, line, column});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, FieldCtx ctx) : toks_(std::move(toks)), ctx_(std::move(ctx)) {}

    ParsedPoly run() {
        ParsedPoly p = expr();
        if (cur().kind != Token::end)
            syntax_error(cur(), std::string("unexpected ") + token_name(cur().kind));
        return p;
    }

private:
    std::vector<Token> toks_;
    FieldCtx ctx_;
    std::size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }

    ParsedPoly make_zero() const { return {ctx_, {}}; }

    ParsedPoly make_constant(const FieldElement& c) const {
        ParsedPoly p = make_zero();
        if (!c.is_zero()) p.terms.emplace(ParsedPoly::Key{0, 0, 0, 0}, c);
        return p;
    }

    static void add_into(ParsedPoly& acc, const ParsedPoly& rhs, bool negate) {
        for (const auto& [key, c] : rhs.terms) {
            auto it = acc.terms.find(key);
            FieldElement v = negate ? -c : c;
            if (it == acc.terms.end()) {
                acc.terms.emplace(key, v);
            } else if ((it->second += v).is_zero()) {
                acc.terms.erase(it);
            }
        }
    }

    static ParsedPoly mul(const ParsedPoly& a, const ParsedPoly& b) {
        ParsedPoly out{a.ctx, {}};
        for (const auto& [ka, ca] : a.terms)
            for (const auto& [kb, cb] : b.terms) {
                ParsedPoly::Key key{};
                for (std::size_t v = 0; v < key.size(); ++v) key[v] = ka[v] + kb[v];
                FieldElement c = ca * cb;
                auto it = out.terms.find(key);
                if (it == out.terms.end()) {
                    if (!c.is_zero()) out.terms.emplace(key, c);
                } else if ((it->second += c).is_zero()) {
                    out.terms.erase(it);
                }
            }
        return out;
    }

    ParsedPoly expr() {
        ParsedPoly acc = term();
        while (cur().kind == Token::plus || cur().kind == Token::minus) {
            bool negate = cur().kind == Token::minus;
            advance();
            add_into(acc, term(), negate);
        }
        return acc;
    }

    ParsedPoly term() {
        ParsedPoly acc = factor();
        while (cur().kind == Token::star) {
            advance();
            acc = mul(acc, factor());
        }
        return acc;
    }

    ParsedPoly factor() {
        if (cur().kind == Token::minus) {
            advance();
            ParsedPoly p = factor();
            ParsedPoly out{p.ctx, {}};
            for (const auto& [key, c] : p.terms) out.terms.emplace(key, -c);
            return out;
        }
        return power();
    }

    ParsedPoly power() {
        ParsedPoly base = atom();
        if (cur().kind != Token::caret) return base;
        advance();
        long e = exponent();
        if (cur().kind == Token::caret)
            syntax_error(cur(), "chained '^' needs parentheses");
        ParsedPoly out = make_constant(FieldElement::one(ctx_));
        ParsedPoly sq = base;
        for (; e > 0; e >>= 1) {
            if (e & 1) out = mul(out, sq);
            if (e > 1) sq = mul(sq, sq);
        }
        return out;
    }

    ParsedPoly atom() {
        const Token& t = cur();
        switch (t.kind) {
            case Token::integer:
                advance();
                return make_constant(FieldElement::from_integer(ctx_, t.value));
            case Token::variable: {
                advance();
                ParsedPoly p = make_zero();
                ParsedPoly::Key key{};
                key[static_cast<std::size_t>(t.var)] = 1;
                p.terms.emplace(key, FieldElement::one(ctx_));
                return p;
            }
            case Token::lparen: {
                advance();
                ParsedPoly p = expr();
                if (cur().kind != Token::rparen)
                    syntax_error(cur(), std::string("expected ')' before ") +
                                            token_name(cur().kind));
                advance();
                return p;
            }
            default:
                syntax_error(t, std::string("expected a number, a variable, or '(' instead of ") +
                                    token_name(t.kind));
        }
    }

    // INTEGER, or a parenthesized signed rational literal; anything whose
    // value is not a nonnegative integer is NonPolynomial
    long exponent() {
        bool parenthesized = cur().kind == Token::lparen;
        if (parenthesized) advance();
        bool negative = false;
        if (cur().kind == Token::minus) {
            negative = true;
            advance();
        }
        if (cur().kind != Token::integer)
            syntax_error(cur(), std::string("expected an integer exponent instead of ") +
                                    token_name(cur().kind));
        Int num = cur().value;
        advance();
        bool fractional = false;
        if (parenthesized && cur().kind == Token::slash) {
            advance();
            if (cur().kind != Token::integer)
                syntax_error(cur(), std::string("expected an integer after '/' instead of ") +
                                        token_name(cur().kind));
            Int den = cur().value;
            advance();
            if (den == 0 || num % den != 0)
                fractional = true;
            else
                num /= den;
        }
        if (parenthesized) {
            if (cur().kind != Token::rparen)
                syntax_error(cur(), std::string("expected ')' after the exponent instead of ") +
                                        token_name(cur().kind));
            advance();
        }
        if (negative && num != 0)
            fail(Errc::NonPolynomial, "negative exponents do not form a polynomial");
        if (fractional)
            fail(Errc::NonPolynomial, "fractional exponents do not form a polynomial");
        if (num > Int(100000)) fail(Errc::UsageError, "exponent too large");
        return static_cast<long>(num.get_si());
    }
};

} // namespace

ParsedPoly parse_poly(const std::string& src, const FieldCtx& ctx) {
    return Parser(tokenize(src), ctx).run();
}

BivariatePoly to_bivariate(const ParsedPoly& p) {
    std::map<XYPoly::Key, FieldElement> terms;
    for (const auto& [key, c] : p.terms) {
        if (key[2] != 0 || key[3] != 0)
            fail(Errc::UsageError, "bivariate input may use only the variables x and y");
        terms.emplace(XYPoly::Key{key[0], key[1]}, c);
    }
    return BivariatePoly::from_terms(p.ctx, std::move(terms));
}

UnivariatePoly to_univariate(const ParsedPoly& p) {
    std::set<std::size_t> used;
    long deg = 0;
    for (const auto& [key, c] : p.terms)
        for (std::size_t v = 0; v < key.size(); ++v)
            if (key[v] != 0) {
                used.insert(v);
                if (key[v] > deg) deg = key[v];
            }
    if (used.size() > 1)
        fail(Errc::UsageError, "univariate input may use only a single variable");
    std::size_t var = used.empty() ? 0 : *used.begin();
    std::vector<FieldElement> coeffs(static_cast<std::size_t>(deg) + 1,
                                     FieldElement::zero(p.ctx));
    for (const auto& [key, c] : p.terms) coeffs[static_cast<std::size_t>(key[var])] = c;
    return UnivariatePoly::from_coeffs(p.ctx, std::move(coeffs));
}

} // namespace compoly
