// Bivariate composed sum, multiplication, and product.
//
// The sum and multiplication have two independent routes. The exact route
// eliminates the auxiliary variable z from the pair (f(x,z), g(x,y-z)) or
// (f(x,z), z^{m2} g(x,y/z)) with the subresultant engine over k[x,y]; the
// branch route combines truncated Newton-Puiseux expansions pairwise. The
// routes check each other: their outputs must agree modulo x^T.
//
// The composed product substitutes branches of g into branches of f and has
// only the branch route. A subtlety governs its accuracy: substituting s =
// q^{1/n1} into p scales p's tail exponents by val(s), so when val(s) < 1 the
// branches of f must be expanded beyond T for the result to be valid through
// x^T. The valuations are read off a first shallow expansion, then both
// inputs are re-expanded at the adjusted depths.

#include "compoly/compose_bi.hpp"

#include <algorithm>
#include <utility>

#include "compoly/newton_puiseux.hpp"
#include "compoly/resultant.hpp"

namespace compoly {

namespace {

void require_pair(const BivariatePoly& f, const BivariatePoly& g, const char* where) {
    if (!f.valid() || !g.valid()) fail(Errc::UsageError, std::string(where) + ": invalid operand");
    if (!f.ctx()->same_field(*g.ctx()))
        fail(Errc::BadFieldMismatch, std::string(where) + ": operands live in different fields");
    if (f.deg_y() < 1 || g.deg_y() < 1)
        fail(Errc::UsageError, std::string(where) + ": operands must be nonconstant in y");
}

BivariatePoly exact_route(const BivariatePoly& f, const BivariatePoly& g, SubstMode mode) {
    const FieldCtx& ctx = f.ctx();
    CompositionOperands ops = substitute_for_composition(f, g, mode);
    auto is_zero = [](const XYPoly& a) { return a.is_zero(); };
    auto sub = [](const XYPoly& a, const XYPoly& b) { return a - b; };
    auto mul = [](const XYPoly& a, const XYPoly& b) { return a * b; };
    auto dive = [](const XYPoly& a, const XYPoly& b) { return a.divexact(b); };
    ResultantEngine<XYPoly, decltype(is_zero), decltype(sub), decltype(mul), decltype(dive)>
        engine(XYPoly(ctx), XYPoly::monomial(FieldElement::one(ctx), 0, 0), is_zero, sub, mul,
               dive);
    return BivariatePoly::from_xypoly(engine.resultant(std::move(ops.f_z), std::move(ops.g_z)));
}

std::vector<PuiseuxSeries> flatten(const BranchSet& bs) {
    std::vector<PuiseuxSeries> out;
    for (const auto& [series, mult] : bs.branches)
        for (long k = 0; k < mult; ++k) out.push_back(series);
    return out;
}

// Coefficient vectors (index = y-degree) multiplied by convolution.
std::vector<PuiseuxSeries> poly_mul(const FieldCtx& ctx, const std::vector<PuiseuxSeries>& a,
                                    const std::vector<PuiseuxSeries>& b) {
    std::vector<PuiseuxSeries> out(a.size() + b.size() - 1, PuiseuxSeries::zero(ctx));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

// prod (y - s) over the given series, multiplied pairwise in a balanced tree
// (a fixed, order-independent schedule), then truncated at T.
std::vector<PuiseuxSeries> expand_product(const FieldCtx& ctx,
                                          const std::vector<PuiseuxSeries>& roots, const Rat& T) {
    PuiseuxSeries one = PuiseuxSeries::monomial(FieldElement::one(ctx), 0, 1);
    std::vector<std::vector<PuiseuxSeries>> level;
    level.reserve(roots.size());
    for (const PuiseuxSeries& s : roots) level.push_back({-s, one});
    while (level.size() > 1) {
        std::vector<std::vector<PuiseuxSeries>> next;
        next.reserve(level.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2)
            next.push_back(poly_mul(ctx, level[i], level[i + 1]));
        if (level.size() & 1) next.push_back(level.back());
        level = std::move(next);
    }
    std::vector<PuiseuxSeries> out = std::move(level.front());
    for (PuiseuxSeries& c : out) c = c.truncated(Trunc::at(T));
    return out;
}

void require_trunc(const Rat& T) {
    if (T <= 0) fail(Errc::UsageError, "truncation bound must be positive");
}

ComposedResult two_route(const BivariatePoly& f, const BivariatePoly& g, const Rat& T,
                         SubstMode mode) {
    ComposedResult out;
    out.exact = exact_route(f, g, mode);
    std::vector<PuiseuxSeries> ps = flatten(expand_branches({f, T}));
    std::vector<PuiseuxSeries> qs = flatten(expand_branches({g, T}));
    out.factored.reserve(ps.size() * qs.size());
    for (const PuiseuxSeries& p : ps)
        for (const PuiseuxSeries& q : qs)
            out.factored.push_back(mode == SubstMode::sum ? p + q : p * q);
    out.expanded = expand_product(f.ctx(), out.factored, T);
    return out;
}

} // namespace

BivariatePoly composed_sum_exact(const BivariatePoly& f, const BivariatePoly& g) {
    require_pair(f, g, "composed_sum");
    return exact_route(f, g, SubstMode::sum);
}

BivariatePoly composed_mul_exact(const BivariatePoly& f, const BivariatePoly& g) {
    require_pair(f, g, "composed_mul");
    if (g.ycoeff(0).empty())
        fail(Errc::ZeroRoot, "composed_mul: g(x, 0) vanishes identically");
    return exact_route(f, g, SubstMode::product);
}

ComposedResult composed_sum(const BivariatePoly& f, const BivariatePoly& g, const Rat& T) {
    require_pair(f, g, "composed_sum");
    require_trunc(T);
    return two_route(f, g, T, SubstMode::sum);
}

ComposedResult composed_mul(const BivariatePoly& f, const BivariatePoly& g, const Rat& T) {
    require_pair(f, g, "composed_mul");
    require_trunc(T);
    if (g.ycoeff(0).empty())
        fail(Errc::ZeroRoot, "composed_mul: g(x, 0) vanishes identically");
    return two_route(f, g, T, SubstMode::product);
}

ComposedResult composed_product(const BivariatePoly& f, const BivariatePoly& g, const Rat& T) {
    require_pair(f, g, "composed_product");
    require_trunc(T);
    if (!f.coeff(0, 0).is_zero() || !g.coeff(0, 0).is_zero())
        fail(Errc::ConstantTermNonzero,
             "composed_product: operands must have zero constant term");

    // Shallow pass: branch valuations of g and ramifications of f decide how
    // deep the real expansions must go for every factor to reach x^T.
    BranchSet g0 = expand_branches({g, T});
    Rat vmin, vmax;
    bool first = true;
    for (const auto& [series, mult] : g0.branches) {
        std::optional<Rat> v = series.val();
        if (!v || *v <= 0)
            fail(Errc::NonpositiveValuation,
                 "composed_product: every branch of g must have strictly positive valuation");
        if (first || *v < vmin) vmin = *v;
        if (first || *v > vmax) vmax = *v;
        first = false;
    }
    long long rmax = 1;
    for (const auto& [series, mult] : expand_branches({f, T}).branches)
        rmax = std::max(rmax, series.ramification());

    Rat Tf = T * Rat(static_cast<long>(rmax)) / vmin;
    if (Tf < T) Tf = T;
    Rat Tg = T + vmax;

    BranchSet bf = expand_branches({f, Tf});
    BranchSet bg = expand_branches({g, Tg});

    ComposedResult out;
    for (const auto& [p, mp] : bf.branches)
        for (const auto& [q, mq] : bg.branches) {
            PuiseuxSeries s = compose(p, q);
            for (long k = 0; k < mp * mq; ++k) out.factored.push_back(s);
        }
    out.expanded = expand_product(f.ctx(), out.factored, T);
    return out;
}

} // namespace compoly
