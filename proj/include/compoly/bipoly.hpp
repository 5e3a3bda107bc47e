#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compoly/unipoly.hpp"

namespace compoly {

// Sparse exact polynomial in x and y: x-exponents may be negative (Laurent),
// y-exponents are nonnegative. This is the working representation used for
// substitutions, resultants in an auxiliary variable, and branch expansion.
class XYPoly {
public:
    using Key = std::pair<long long, long>; // (x-exponent, y-degree)

    XYPoly() = default;
    explicit XYPoly(const FieldCtx& ctx) : ctx_(ctx) {}
    static XYPoly monomial(const FieldElement& c, long long xe, long ye);

    bool valid() const { return ctx_ != nullptr; }
    const FieldCtx& ctx() const { return ctx_; }
    const std::map<Key, FieldElement>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(long long xe, long ye, const FieldElement& c);
    FieldElement coeff(long long xe, long ye) const;
    long deg_y() const;      // -1 when zero
    long long min_xexp() const; // 0 when zero

    XYPoly operator-() const;
    XYPoly& operator+=(const XYPoly& o);
    XYPoly& operator-=(const XYPoly& o);
    XYPoly& operator*=(const XYPoly& o);
    friend XYPoly operator+(XYPoly a, const XYPoly& b) { return a += b; }
    friend XYPoly operator-(XYPoly a, const XYPoly& b) { return a -= b; }
    friend XYPoly operator*(XYPoly a, const XYPoly& b) { return a *= b; }
    XYPoly scaled(const FieldElement& c) const;
    XYPoly shifted_x(long long k) const; // multiply by x^k
    XYPoly pow(long k) const;

    // Exact quotient (throws logic_error if division leaves a remainder;
    // callers only divide known multiples).
    XYPoly divexact(const XYPoly& b) const;

    bool operator==(const XYPoly& o) const { return t_ == o.t_; }
    bool operator!=(const XYPoly& o) const { return !(*this == o); }

private:
    FieldCtx ctx_;
    std::map<Key, FieldElement> t_; // no zero coefficients stored
};

// Bivariate polynomial f(x, y), monic in y, with Laurent-polynomial
// x-coefficients. The shape of Newton-Puiseux inputs: y^m + a_1(x) y^{m-1}
// + ... + a_m(x).
class BivariatePoly {
public:
    using XPoly = std::map<long long, FieldElement>; // x-exponent -> coefficient

    BivariatePoly() = default;

    // Validates monic-in-y; terms maps (xexp, ydeg) to coefficients.
    static BivariatePoly from_terms(const FieldCtx& ctx,
                                    const std::map<XYPoly::Key, FieldElement>& terms);
    static BivariatePoly from_xypoly(const XYPoly& p);
    // y - (a single Laurent x-polynomial): convenience for linear inputs.
    static BivariatePoly linear_in_y(const FieldCtx& ctx, const XPoly& rhs);

    bool valid() const { return ctx_ != nullptr; }
    const FieldCtx& ctx() const { return ctx_; }
    long deg_y() const { return static_cast<long>(coeffs_.size()) - 1; }
    const XPoly& ycoeff(long j) const;
    FieldElement coeff(long long i, long j) const;
    std::map<XYPoly::Key, FieldElement> terms() const;

    XYPoly to_xypoly() const;

    bool operator==(const BivariatePoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const BivariatePoly& o) const { return !(*this == o); }

    // Canonical text: monomials ordered by y-degree descending then x-exponent
    // ascending.
    std::string to_string() const;

private:
    FieldCtx ctx_;
    std::vector<XPoly> coeffs_; // index = y-degree; back() = {0: 1}
};

struct NewtonEdge {
    Rat slope;                                       // negative for branch edges
    std::vector<std::pair<long long, long>> points;  // support points on the edge, increasing i
};

struct NewtonPolygon {
    std::vector<std::pair<long long, long>> vertices; // increasing i, strictly decreasing j
    std::vector<NewtonEdge> edges;                    // slopes strictly increasing
};

// Lower convex hull of the support {(i, j) : coeff of x^i y^j != 0},
// restricted to its strictly descending (negative-slope) part.
NewtonPolygon newton_polygon(const XYPoly& f);
NewtonPolygon newton_polygon(const BivariatePoly& f);

// The common total degree of all monomials, if there is one.
std::optional<long> homogeneous_degree(const BivariatePoly& f);

// w_f(t) with t^j coefficient a_{n-j,j}, for f homogeneous of degree n with
// nonzero x^n and y^n coefficients; satisfies f(x, tx) = x^n w_f(t).
UnivariatePoly associated_poly(const BivariatePoly& f);

enum class SubstMode { sum, product };

// The two polynomials the composed-sum / composed-multiplication resultants
// take in the auxiliary variable z: coefficient vectors indexed by z-degree
// with entries in k[x, y].
struct CompositionOperands {
    std::vector<XYPoly> f_z; // f(x, z)
    std::vector<XYPoly> g_z; // g(x, y - z) or z^{deg_y g} g(x, y/z)
};

CompositionOperands substitute_for_composition(const BivariatePoly& f, const BivariatePoly& g,
                                               SubstMode mode);

} // namespace compoly
