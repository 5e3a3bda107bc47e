#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "compoly/field.hpp"

namespace compoly {

// Truncation bound for a series: either "known modulo x^T" for a finite
// rational T, or exact (+infinity).
class Trunc {
public:
    static Trunc infinity() { return Trunc(); }
    static Trunc at(const Rat& v) {
        Trunc t;
        t.finite_ = true;
        t.v_ = v;
        return t;
    }

    bool is_finite() const { return finite_; }
    const Rat& value() const; // finite bounds only

    // e < T (every finite exponent is below +infinity).
    bool covers(const Rat& e) const { return !finite_ || e < v_; }

    Trunc shifted(const Rat& d) const;      // T + d
    Trunc scaled(const Rat& s) const;       // s * T, s > 0
    friend Trunc min(const Trunc& a, const Trunc& b);

    bool operator==(const Trunc& o) const {
        return finite_ == o.finite_ && (!finite_ || v_ == o.v_);
    }
    bool operator!=(const Trunc& o) const { return !(*this == o); }

    std::string to_string() const { return finite_ ? rat_to_string(v_) : "inf"; }

private:
    bool finite_ = false;
    Rat v_;
};

// Truncated fractional-power series sum_u c_u x^{u/n} with ramification index
// n; known modulo x^T. In characteristic p the ramification must be prime to
// p. The ramification is not required to be minimal.
class PuiseuxSeries {
public:
    PuiseuxSeries() = default; // invalid placeholder

    static PuiseuxSeries zero(const FieldCtx& ctx, Trunc t = Trunc::infinity());
    static PuiseuxSeries monomial(const FieldElement& c, long long u, long long n,
                                  Trunc t = Trunc::infinity());
    static PuiseuxSeries from_terms(const FieldCtx& ctx, long long n,
                                    std::map<long long, FieldElement> terms,
                                    Trunc t = Trunc::infinity());

    bool valid() const { return ctx_ != nullptr; }
    const FieldCtx& ctx() const { return ctx_; }
    long long ramification() const { return ram_; }
    const std::map<long long, FieldElement>& terms() const { return t_; }
    const Trunc& truncation() const { return trunc_; }
    bool is_zero() const { return t_.empty(); }

    // Valuation u_min/n; empty for the zero series.
    std::optional<Rat> val() const;
    FieldElement leading_coeff() const; // ZeroInput on zero series
    FieldElement coeff_at(const Rat& e) const;

    // Same series on ramification L (a multiple of the current one).
    PuiseuxSeries rescaled(long long L) const;
    // Minimal-ramification copy (for canonical comparison).
    PuiseuxSeries normalized() const;
    // Drop terms at exponents >= T and tighten the bound.
    PuiseuxSeries truncated(const Trunc& T) const;

    PuiseuxSeries operator-() const;
    friend PuiseuxSeries operator+(const PuiseuxSeries& p, const PuiseuxSeries& q);
    friend PuiseuxSeries operator-(const PuiseuxSeries& p, const PuiseuxSeries& q);
    friend PuiseuxSeries operator*(const PuiseuxSeries& p, const PuiseuxSeries& q);
    PuiseuxSeries scaled(const FieldElement& c) const;

    bool operator==(const PuiseuxSeries& o) const; // same field, exponents, coefficients, bound

    std::string to_string() const;

private:
    FieldCtx ctx_;
    long long ram_ = 1;
    std::map<long long, FieldElement> t_; // numerator u -> nonzero coefficient
    Trunc trunc_;

    void prune(); // enforce "all u/n < T" and nonzero coefficients
};

// p^r for rational r: write p = c x^v (1 + u) and apply the binomial series;
// the d-th root of c (d = denominator of r) follows the canonical nth_root
// rule. Truncation: r*v + (T_p - v).
// Errors: ZeroInput (p = 0), NoSuchRoot, CharDividesDenominator, and
// UsageError when an exact series would need infinitely many binomial terms
// (callers must truncate first).
PuiseuxSeries pow_rational(const PuiseuxSeries& p, const Rat& r);

// Substitute q for p's variable: sum c_u q^{u/n_p}. Requires val(q) > 0.
PuiseuxSeries compose(const PuiseuxSeries& p, const PuiseuxSeries& q);

// Multiply each term c_u x^{u/n} by omega^{i u}; omega must satisfy
// omega^n = 1 for p's ramification n.
PuiseuxSeries conjugate(const PuiseuxSeries& p, const FieldElement& omega, long long i);

// Deterministic total order: valuation ascending, then coefficients compared
// along merged exponents. Used for branch ordering.
int series_cmp(const PuiseuxSeries& a, const PuiseuxSeries& b);

// Termwise agreement below x^T.
bool equal_mod(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rat& T);

// Expansion output: branches with multiplicities summing to the y-degree.
struct BranchSet {
    std::vector<std::pair<PuiseuxSeries, long>> branches;
    long total_degree = 0;
};

} // namespace compoly
