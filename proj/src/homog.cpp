// Homogeneous composition theory: every operation funnels through the
// associated univariate polynomial w_f (the slice f(x, tx) = x^n w_f(t)),
// so composition, associate search, and decomposition are thin homogeneous
// wrappers around the univariate multiplicative machinery.

#include "compoly/homog.hpp"

#include <map>
#include <numeric>
#include <utility>

#include "compoly/error.hpp"

namespace compoly {

namespace {

void require_finite(const BivariatePoly& f, const char* who) {
    if (!f.valid()) fail(Errc::UsageError, std::string(who) + ": empty polynomial");
    if (f.ctx()->config().kind != FieldKind::Finite)
        fail(Errc::NotFiniteField, std::string(who) + ": homogeneous composition theory is "
                                                      "developed over finite fields only");
}

// Structural part of membership: homogeneous with both corner coefficients
// present.  Returns the degree, or nothing.
std::optional<long> corners_ok(const BivariatePoly& f) {
    std::optional<long> n = homogeneous_degree(f);
    if (!n || *n <= 0) return std::nullopt;
    if (f.coeff(*n, 0).is_zero() || f.coeff(0, *n).is_zero()) return std::nullopt;
    return n;
}

// x^{n-j} y^j coefficients read off a monic univariate w of degree n.
HomogeneousElement homogenize(const UnivariatePoly& w) {
    const FieldCtx& ctx = w.ctx();
    std::map<XYPoly::Key, FieldElement> terms;
    for (long j = 0; j <= w.deg(); ++j) {
        FieldElement c = w.coeff(j);
        if (!c.is_zero()) terms.emplace(XYPoly::Key{w.deg() - j, j}, c);
    }
    return {BivariatePoly::from_terms(ctx, std::move(terms)), w, w.deg()};
}

} // namespace

Membership membership(const BivariatePoly& f) {
    require_finite(f, "membership");
    std::optional<long> n = corners_ok(f);
    if (!n) return Membership::not_member;
    if (Int(*n) * Int(*n) >= f.ctx()->config().p) return Membership::not_member;
    return is_irreducible(associated_poly(f)) ? Membership::in_Mhmin : Membership::in_Mh;
}

HomogeneousElement homog_element(const BivariatePoly& f) {
    require_finite(f, "homog_element");
    std::optional<long> n = corners_ok(f);
    if (!n)
        fail(Errc::NotMember,
             "homog_element: input must be homogeneous with nonzero x^n and y^n coefficients");
    if (Int(*n) >= f.ctx()->config().p)
        fail(Errc::NotMember, "homog_element: degree must be below the characteristic");
    UnivariatePoly w = associated_poly(f);
    if (!is_irreducible(w))
        fail(Errc::NotMember,
             "homog_element: associated polynomial is reducible over the declared field");
    return {f, std::move(w), *n};
}

HomogeneousElement degree_one_element(const FieldElement& a) {
    if (a.is_zero())
        fail(Errc::ZeroElement, "degree_one_element: the slice consists of y - ax with a nonzero");
    const FieldCtx& ctx = a.ctx();
    std::map<XYPoly::Key, FieldElement> terms{{{0, 1}, FieldElement::one(ctx)}, {{1, 0}, -a}};
    return homog_element(BivariatePoly::from_terms(ctx, std::move(terms)));
}

HomogeneousElement homog_compose(const HomogeneousElement& f, const HomogeneousElement& g) {
    HomogeneousElement a = homog_element(f.poly);
    HomogeneousElement b = homog_element(g.poly);
    if (a.poly.ctx() != b.poly.ctx())
        fail(Errc::BadFieldMismatch, "homog_compose: operands from different fields");
    if (std::gcd(a.degree, b.degree) != 1)
        fail(Errc::NotCoprime, "homog_compose: factor degrees must be coprime");
    if (Int(a.degree) * Int(b.degree) >= a.poly.ctx()->config().p)
        fail(Errc::DegreeBoundExceeded,
             "homog_compose: degree product must stay below the characteristic");
    return homogenize(composed_mul_uni(a.associated, b.associated));
}

std::optional<FieldElement> is_associate(const HomogeneousElement& f,
                                         const HomogeneousElement& g) {
    HomogeneousElement a = homog_element(f.poly);
    HomogeneousElement b = homog_element(g.poly);
    if (a.poly.ctx() != b.poly.ctx())
        fail(Errc::BadFieldMismatch, "is_associate: operands from different fields");
    if (a.degree != b.degree) return std::nullopt;
    for (const FieldElement& u : enumerate_field(a.poly.ctx())) {
        if (u.is_zero()) continue;
        if (homog_compose(degree_one_element(u), b).poly == a.poly) return u;
    }
    return std::nullopt;
}

HomogDecomposition homog_decompose(const HomogeneousElement& F, const Int& budget) {
    HomogeneousElement checked = homog_element(F.poly);
    DecompositionResult uni =
        decompose_uni(checked.associated, DiamondKind::multiplication, budget);

    HomogDecomposition out;
    for (const UnivariatePoly& w : uni.factors) out.factors.push_back(homogenize(w));
    for (const DecompositionResult::Alternate& alt : uni.alternates) {
        HomogDecomposition::Alternate h;
        for (const UnivariatePoly& w : alt.factors) h.factors.push_back(homogenize(w));
        h.permutation = alt.permutation;
        h.units = alt.units;
        out.alternates.push_back(std::move(h));
    }
    return out;
}

} // namespace compoly
