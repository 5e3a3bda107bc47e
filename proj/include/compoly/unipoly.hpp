#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "compoly/field.hpp"

namespace compoly {

// Dense univariate polynomial over one coefficient field. Coefficients are
// indexed by exponent; the vector is always trimmed so the leading
// coefficient is nonzero (empty vector = zero polynomial).
class UnivariatePoly {
public:
    UnivariatePoly() = default; // invalid placeholder

    static UnivariatePoly zero(const FieldCtx& ctx);
    static UnivariatePoly one(const FieldCtx& ctx);
    static UnivariatePoly variable(const FieldCtx& ctx); // the monic degree-1 monomial
    static UnivariatePoly constant(const FieldElement& c);
    static UnivariatePoly monomial(const FieldElement& c, long k);
    static UnivariatePoly from_coeffs(const FieldCtx& ctx, std::vector<FieldElement> coeffs);
    static UnivariatePoly linear_root(const FieldElement& a); // z - a

    bool valid() const { return ctx_ != nullptr; }
    const FieldCtx& ctx() const { return ctx_; }
    long deg() const { return static_cast<long>(c_.size()) - 1; } // -1 when zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const FieldElement& lc() const;
    FieldElement coeff(long k) const;
    const std::vector<FieldElement>& coeffs() const { return c_; }

    bool is_monic() const;
    UnivariatePoly monic() const; // zero stays zero

    UnivariatePoly operator-() const;
    UnivariatePoly& operator+=(const UnivariatePoly& o);
    UnivariatePoly& operator-=(const UnivariatePoly& o);
    UnivariatePoly& operator*=(const UnivariatePoly& o);
    friend UnivariatePoly operator+(UnivariatePoly a, const UnivariatePoly& b) { return a += b; }
    friend UnivariatePoly operator-(UnivariatePoly a, const UnivariatePoly& b) { return a -= b; }
    friend UnivariatePoly operator*(UnivariatePoly a, const UnivariatePoly& b) { return a *= b; }
    UnivariatePoly scaled(const FieldElement& c) const;
    UnivariatePoly shifted(long k) const; // multiply by z^k
    UnivariatePoly pow(long k) const;

    // Quotient and remainder; divisor must be nonzero.
    friend void divrem(const UnivariatePoly& a, const UnivariatePoly& b, UnivariatePoly& q,
                       UnivariatePoly& r);
    UnivariatePoly operator/(const UnivariatePoly& b) const;
    UnivariatePoly operator%(const UnivariatePoly& b) const;

    UnivariatePoly derivative() const;
    FieldElement evaluate(const FieldElement& a) const;
    UnivariatePoly substitute(const UnivariatePoly& g) const; // f(g(z))

    bool operator==(const UnivariatePoly& o) const { return c_ == o.c_; }
    bool operator!=(const UnivariatePoly& o) const { return !(*this == o); }

    std::string to_string(const std::string& var = "x") const;

private:
    FieldCtx ctx_;
    std::vector<FieldElement> c_;

    void trim();
};

UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b); // monic

// Res(f, g) = lc(f)^{deg g} * prod g(alpha_i) over the roots of f, computed
// without root extraction: fraction-free subresultant sequence in
// characteristic zero, Euclidean remainder sequence over finite fields.
FieldElement resultant(const UnivariatePoly& f, const UnivariatePoly& g);

// Deterministic irreducibility test over F_{p^e} (Rabin): f | z^{q^n} - z and
// gcd(z^{q^{n/l}} - z, f) = 1 for every prime l | n.
bool is_irreducible(const UnivariatePoly& f);

// All roots of f lying in its (finite) coefficient field, with multiplicities,
// sorted by the canonical element order. Splitting randomness comes from the
// given seed only.
std::vector<std::pair<FieldElement, long>> roots_in_field(const UnivariatePoly& f,
                                                          std::uint64_t seed = 0);

// x^e mod m (e arbitrary nonnegative), and general modular powers.
UnivariatePoly powmod(const UnivariatePoly& base, const Int& e, const UnivariatePoly& mod);

} // namespace compoly
