#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "compoly/error.hpp"

namespace compoly {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class's (num, den) constructor does not reduce the fraction; this does.
Rat make_rat(const Int& num, const Int& den);
std::string rat_to_string(const Rat& r);

enum class FieldKind { Rational, Cyclotomic, Finite };

// Value-type description of a coefficient field: Q, Q(zeta_N), or F_{p^e}.
// For finite fields the defining modulus may be pinned explicitly (as a monic
// coefficient vector over F_p, low degree first); when absent the canonical
// lexicographically-least irreducible is used.
struct FieldConfig {
    FieldKind kind = FieldKind::Rational;
    long order = 0; // cyclotomic: N >= 1
    Int p;          // finite: characteristic
    long ext = 1;   // finite: extension degree e >= 1
    std::vector<Int> modulus; // finite, optional: e+1 coefficients, monic

    static FieldConfig rational();
    static FieldConfig cyclotomic(long n);
    static FieldConfig finite(const Int& p, long e = 1);

    std::string to_string() const; // e.g. "rational", "cyclo:24", "finite:2:2"
};

class FieldContext;
using FieldCtx = std::shared_ptr<const FieldContext>;

// Immutable realization of a FieldConfig carrying derived structure
// constants (cyclotomic polynomial, torsion order, finite-field modulus).
// All elements hold a shared pointer to their context; contexts created from
// equal configs are interchangeable.
class FieldContext {
public:
    static FieldCtx make(const FieldConfig& cfg);

    const FieldConfig& config() const { return cfg_; }
    FieldKind kind() const { return cfg_.kind; }
    std::string describe() const { return cfg_.to_string(); }

    // Cyclotomic accessors (kind == Cyclotomic).
    long order() const { return cfg_.order; }              // N
    long degree() const { return phi_; }                   // phi(N) = [Q(zeta_N):Q]
    const std::vector<Rat>& minimal_poly() const { return cyclo_; } // Phi_N, monic, low first
    long torsion_order() const { return torsion_; }        // #roots of unity = lcm(2, N)

    // Finite accessors (kind == Finite).
    const Int& characteristic() const { return char_; }    // 0 in characteristic zero
    long ext_degree() const { return cfg_.ext; }
    const Int& cardinality() const { return card_; }       // p^e
    const std::vector<Int>& modulus() const { return cfg_.modulus; } // monic, e+1 entries

    bool same_field(const FieldContext& other) const;

private:
    FieldContext() = default;

    FieldConfig cfg_;
    long phi_ = 0;
    std::vector<Rat> cyclo_;
    long torsion_ = 0;
    Int char_ = 0;
    Int card_ = 0;
};

// One exact field element. Representation by field kind:
//   Rational   -- a canonical mpq_class
//   Cyclotomic -- coordinates (c_0..c_{phi-1}) w.r.t. powers of zeta_N
//   Finite     -- coordinates (c_0..c_{e-1}) w.r.t. powers of the generator,
//                 each reduced into [0, p)
class FieldElement {
public:
    FieldElement() = default; // invalid placeholder; usable only as a container slot

    static FieldElement zero(const FieldCtx& ctx);
    static FieldElement one(const FieldCtx& ctx);
    static FieldElement from_integer(const FieldCtx& ctx, const Int& n);
    static FieldElement from_rational(const FieldCtx& ctx, const Rat& r);
    static FieldElement cyclotomic_coords(const FieldCtx& ctx, std::vector<Rat> coords);
    static FieldElement finite_coords(const FieldCtx& ctx, std::vector<Int> coords);

    bool valid() const { return ctx_ != nullptr; }
    const FieldCtx& ctx() const { return ctx_; }
    FieldKind kind() const { return ctx_->kind(); }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;          // lies in the prime subfield Q (char 0 kinds)
    Rat rational_value() const;        // requires is_rational() or kind Rational
    const std::vector<Rat>& coords() const;    // cyclotomic coordinates
    const std::vector<Int>& ff_coords() const; // finite-field coordinates

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

    FieldElement inverse() const; // ZeroElement on zero
    FieldElement pow(const Int& k) const; // negative k inverts first

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // Total order used wherever a deterministic choice among field elements is
    // needed (root selection, output ordering): rationals by value, coordinate
    // vectors lexicographically.
    int cmp(const FieldElement& o) const;
    bool operator<(const FieldElement& o) const { return cmp(o) < 0; }

    std::string to_string() const;

private:
    FieldCtx ctx_;
    std::variant<Rat, std::vector<Rat>, std::vector<Int>> v_;

    friend void require_same_field(const FieldElement& a, const FieldElement& b, const char* where);
};

void require_same_field(const FieldElement& a, const FieldElement& b, const char* where);

// zeta_N^k in a cyclotomic context (k arbitrary, reduced mod N).
FieldElement cyclotomic_generator_power(const FieldCtx& ctx, long k);
// Generator (low-degree residue t) of a finite extension field, t itself for e >= 2.
FieldElement finite_generator(const FieldCtx& ctx);
// All roots of unity of the field Q(zeta_N): the cyclic group of order lcm(2, N).
std::vector<FieldElement> all_roots_of_unity(const FieldCtx& ctx);
// Enumerate every element of a finite field in canonical (coordinate-lex) order.
std::vector<FieldElement> enumerate_field(const FieldCtx& ctx);

// A primitive m-th root of unity: zeta_N^{N/m} when m | N (cyclotomic), or the
// first power y^{(q-1)/m} of exact order m over the canonical enumeration of
// F_q (finite). NoSuchRoot when the field has none.
FieldElement primitive_root_of_unity(const FieldCtx& ctx, const Int& m);

// Canonical n-th root of a (a != 0), or NoSuchRoot. Choice rules:
//   rational: the positive real root when it exists in Q (negative for odd n
//             of a negative rational);
//   cyclotomic: zeta^{k/n} when a = zeta^k with n | k; otherwise, for
//             a = r * u (r positive rational, u a root of unity), the root
//             with lexicographically least coordinates; non-monomial elements
//             are out of scope and report NoSuchRoot;
//   finite:   the root with lexicographically least coordinates.
FieldElement nth_root(const FieldElement& a, const Int& n);

// a^q for q = p^d a power of the characteristic (BadFieldMismatch otherwise).
FieldElement frobenius(const FieldElement& a, const Int& q);

// Config for F_{p^e} defined by the lexicographically smallest monic
// irreducible of degree e over F_p (coefficient tuples (c_{e-1},...,c_0)
// ordered lexicographically with 0 < 1 < ... < p-1).
FieldConfig build_extension(const Int& p, long e);

} // namespace compoly
