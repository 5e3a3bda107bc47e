#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "compoly/bipoly.hpp"

using namespace compoly;

namespace {

FieldCtx Q() { return FieldContext::make(FieldConfig::rational()); }
FieldCtx F(long p) { return FieldContext::make(FieldConfig::finite(p)); }

using Terms = std::map<XYPoly::Key, long>;

BivariatePoly bp(const FieldCtx& ctx, const Terms& terms) {
    std::map<XYPoly::Key, FieldElement> t;
    for (const auto& [k, v] : terms) t[k] = FieldElement::from_integer(ctx, v);
    return BivariatePoly::from_terms(ctx, t);
}

// y^4 - 2x^3 y^2 - 4x^5 y + x^6 - x^7: the running quartic example.
BivariatePoly quartic(const FieldCtx& ctx) {
    return bp(ctx, {{{0, 4}, 1}, {{3, 2}, -2}, {{5, 1}, -4}, {{6, 0}, 1}, {{7, 0}, -1}});
}

FieldElement eval(const BivariatePoly& f, const FieldElement& xv, const FieldElement& yv) {
    FieldElement acc = FieldElement::zero(f.ctx());
    for (long j = 0; j <= f.deg_y(); ++j)
        for (const auto& [i, c] : f.ycoeff(j))
            acc += c * xv.pow(static_cast<long>(i)) * yv.pow(j);
    return acc;
}

FieldElement eval(const XYPoly& f, const FieldElement& xv, const FieldElement& yv) {
    FieldElement acc = FieldElement::zero(f.ctx());
    for (const auto& [k, c] : f.terms())
        acc += c * xv.pow(static_cast<long>(k.first)) * yv.pow(k.second);
    return acc;
}

} // namespace

TEST_CASE("construction enforces monic leading y-coefficient") {
    auto q = Q();
    CHECK(quartic(q).deg_y() == 4);
    CHECK_THROWS_AS(bp(q, {{{0, 2}, 2}, {{0, 0}, 1}}), Error);   // 2y^2 + 1
    CHECK_THROWS_AS(bp(q, {{{1, 2}, 1}, {{0, 0}, 1}}), Error);   // x y^2 + 1
    CHECK_THROWS_AS(bp(q, {}), Error);                           // zero polynomial
    CHECK(bp(q, {{{0, 1}, 1}, {{1, 0}, -1}}).to_string() == "y - x");
}

TEST_CASE("canonical text ordering is y-degree descending, x ascending") {
    auto q = Q();
    CHECK(quartic(q).to_string() == "y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7");
    // Laurent coefficients render with parenthesized negative exponents.
    BivariatePoly lau = bp(q, {{{0, 1}, 1}, {{-2, 0}, 3}});
    CHECK(lau.to_string() == "y + 3*x^(-2)");
}

TEST_CASE("newton polygon of the quartic: one edge of slope -2/3") {
    auto q = Q();
    NewtonPolygon np = newton_polygon(quartic(q));
    REQUIRE(np.vertices.size() == 2);
    CHECK(np.vertices[0] == std::pair<long long, long>{0, 4});
    CHECK(np.vertices[1] == std::pair<long long, long>{6, 0});
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].slope == make_rat(-2, 3));
    CHECK(np.edges[0].points ==
          std::vector<std::pair<long long, long>>{{0, 4}, {3, 2}, {6, 0}});
    // gamma = -slope gives the first branch exponent 2/3... times nothing:
    // the leading branch exponent is -1/slope^{-1}; here gamma = 3/2.
    CHECK(make_rat(-1, 1) / np.edges[0].slope == make_rat(3, 2));
}

TEST_CASE("newton polygon of linear and quadratic basics") {
    auto q = Q();
    NewtonPolygon l = newton_polygon(bp(q, {{{0, 1}, 1}, {{1, 0}, -1}})); // y - x
    REQUIRE(l.edges.size() == 1);
    CHECK(l.edges[0].slope == make_rat(-1, 1));
    CHECK(l.vertices == std::vector<std::pair<long long, long>>{{0, 1}, {1, 0}});

    // y^2 - x: edge (0,2)-(1,0), so dj/di = -2 and the branch exponent
    // -1/slope = 1/2 (the square-root branch).
    NewtonPolygon s = newton_polygon(bp(q, {{{0, 2}, 1}, {{1, 0}, -1}}));
    REQUIRE(s.edges.size() == 1);
    CHECK(s.edges[0].slope == make_rat(-2, 1));
    CHECK(make_rat(-1, 1) / s.edges[0].slope == make_rat(1, 2));

    // Pure power of y: a single vertex, no descending edge.
    NewtonPolygon pw = newton_polygon(bp(q, {{{0, 3}, 1}}));
    CHECK(pw.vertices == std::vector<std::pair<long long, long>>{{0, 3}});
    CHECK(pw.edges.empty());
}

TEST_CASE("all support points lie on or above every polygon edge") {
    std::mt19937_64 rng(321);
    auto q = Q();
    for (int trial = 0; trial < 30; ++trial) {
        long m = 1 + static_cast<long>(rng() % 4);
        std::map<XYPoly::Key, FieldElement> terms;
        terms[{0, m}] = FieldElement::one(q);
        for (int t = 0; t < 6; ++t) {
            long j = static_cast<long>(rng() % m);
            long long i = static_cast<long long>(rng() % 7);
            long v = static_cast<long>(rng() % 9) - 4;
            if (v != 0) terms[{i, j}] = FieldElement::from_integer(q, v);
        }
        BivariatePoly f = BivariatePoly::from_terms(q, terms);
        NewtonPolygon np = newton_polygon(f);
        for (const auto& e : np.edges) {
            REQUIRE(e.points.size() >= 2);
            auto [i0, j0] = e.points.front();
            const Int& sn = e.slope.get_num();
            const Int& sd = e.slope.get_den(); // > 0
            for (long j = 0; j <= f.deg_y(); ++j)
                for (const auto& [i, c] : f.ycoeff(j)) {
                    // j >= j0 + slope*(i - i0) <=> (j - j0)*sd >= sn*(i - i0)
                    Int lhs = Int(j - j0) * sd;
                    Int rhs = sn * Int(static_cast<long>(i - i0));
                    CHECK(lhs >= rhs);
                }
        }
    }
}

TEST_CASE("homogeneity detection and scaling law") {
    auto q = Q();
    auto f7 = F(7);
    CHECK(homogeneous_degree(bp(q, {{{0, 2}, 1}, {{1, 1}, 1}, {{2, 0}, 3}})) == 2);
    CHECK(!homogeneous_degree(bp(q, {{{0, 2}, 1}, {{1, 0}, -1}})).has_value());
    CHECK(homogeneous_degree(bp(f7, {{{0, 1}, 1}, {{1, 0}, -5}})) == 1);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        long n = 1 + static_cast<long>(rng() % 4);
        std::map<XYPoly::Key, FieldElement> terms;
        terms[{0, n}] = FieldElement::one(f7);
        for (long j = 0; j < n; ++j) {
            long v = static_cast<long>(rng() % 7);
            if (v) terms[{n - j, j}] = FieldElement::from_integer(f7, v);
        }
        BivariatePoly f = BivariatePoly::from_terms(f7, terms);
        auto d = homogeneous_degree(f);
        REQUIRE(d.has_value());
        CHECK(*d == n);
        for (int k = 0; k < 5; ++k) {
            FieldElement lam = FieldElement::from_integer(f7, 1 + static_cast<long>(rng() % 6));
            FieldElement xv = FieldElement::from_integer(f7, static_cast<long>(rng() % 7));
            FieldElement yv = FieldElement::from_integer(f7, static_cast<long>(rng() % 7));
            CHECK(eval(f, lam * xv, lam * yv) == lam.pow(n) * eval(f, xv, yv));
        }
    }
}

TEST_CASE("associated polynomial w_f") {
    auto q = Q();
    auto f7 = F(7);
    // y - a x -> t - a
    BivariatePoly lin = bp(q, {{{0, 1}, 1}, {{1, 0}, -5}});
    UnivariatePoly w = associated_poly(lin);
    CHECK(w.deg() == 1);
    CHECK(w.coeff(0) == FieldElement::from_integer(q, -5));
    CHECK(w.coeff(1).is_one());

    // y^2 + x y + 3 x^2 over F_7 -> t^2 + t + 3
    UnivariatePoly w2 = associated_poly(bp(f7, {{{0, 2}, 1}, {{1, 1}, 1}, {{2, 0}, 3}}));
    CHECK(w2.coeff(0) == FieldElement::from_integer(f7, 3));
    CHECK(w2.coeff(1) == FieldElement::from_integer(f7, 1));
    CHECK(w2.coeff(2).is_one());

    // Vanishing x^n corner is rejected.
    try {
        associated_poly(bp(q, {{{0, 2}, 1}, {{1, 1}, 1}}));
        FAIL("expected NotInMh");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInMh);
    }
    CHECK_THROWS_AS(associated_poly(bp(q, {{{0, 2}, 1}, {{1, 0}, -1}})), Error);

    // Identity f(x, tx) = x^n w_f(t) at random sample points.
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        long n = 1 + static_cast<long>(rng() % 4);
        std::map<XYPoly::Key, FieldElement> terms;
        terms[{0, n}] = FieldElement::one(f7);
        terms[{n, 0}] = FieldElement::from_integer(f7, 1 + static_cast<long>(rng() % 6));
        for (long j = 1; j < n; ++j) {
            long v = static_cast<long>(rng() % 7);
            if (v) terms[{n - j, j}] = FieldElement::from_integer(f7, v);
        }
        BivariatePoly f = BivariatePoly::from_terms(f7, terms);
        UnivariatePoly wf = associated_poly(f);
        CHECK(wf.deg() == n);
        CHECK(!wf.coeff(0).is_zero());
        for (int k = 0; k < 6; ++k) {
            FieldElement t = FieldElement::from_integer(f7, static_cast<long>(rng() % 7));
            FieldElement xv = FieldElement::from_integer(f7, 1 + static_cast<long>(rng() % 6));
            CHECK(eval(f, xv, t * xv) == xv.pow(n) * wf.evaluate(t));
        }
    }
}

TEST_CASE("substitutions feeding the composed-operation resultants") {
    auto q = Q();
    BivariatePoly f = bp(q, {{{0, 2}, 1}, {{1, 0}, -1}}); // y^2 - x (any monic f works)

    // sum mode, g = y: the transformed polynomial is y - z.
    CompositionOperands ops = substitute_for_composition(f, bp(q, {{{0, 1}, 1}}), SubstMode::sum);
    REQUIRE(ops.g_z.size() == 2);
    CHECK(ops.g_z[0] == XYPoly::monomial(FieldElement::one(q), 0, 1));
    CHECK(ops.g_z[1] == XYPoly::monomial(-FieldElement::one(q), 0, 0));

    // product mode, g = y - 1: z*(y/z - 1) = y - z.
    CompositionOperands ops2 =
        substitute_for_composition(f, bp(q, {{{0, 1}, 1}, {{0, 0}, -1}}), SubstMode::product);
    REQUIRE(ops2.g_z.size() == 2);
    CHECK(ops2.g_z[0] == XYPoly::monomial(FieldElement::one(q), 0, 1));
    CHECK(ops2.g_z[1] == XYPoly::monomial(-FieldElement::one(q), 0, 0));

    // sum mode, g = y^2 - x: (y - z)^2 - x = y^2 - 2yz + z^2 - x.
    CompositionOperands ops3 = substitute_for_composition(f, f, SubstMode::sum);
    REQUIRE(ops3.g_z.size() == 3);
    XYPoly expect0(q);
    expect0.add_term(0, 2, FieldElement::one(q));
    expect0.add_term(1, 0, -FieldElement::one(q));
    CHECK(ops3.g_z[0] == expect0);
    CHECK(ops3.g_z[1] == XYPoly::monomial(FieldElement::from_integer(q, -2), 0, 1));
    CHECK(ops3.g_z[2] == XYPoly::monomial(FieldElement::one(q), 0, 0));

    // f side is the plain reread of y-coefficients as z-coefficients.
    REQUIRE(ops.f_z.size() == 3);
    CHECK(ops.f_z[0] == XYPoly::monomial(-FieldElement::one(q), 1, 0));
    CHECK(ops.f_z[1].is_zero());
    CHECK(ops.f_z[2] == XYPoly::monomial(FieldElement::one(q), 0, 0));
}

TEST_CASE("sparse bivariate arithmetic and exact division") {
    auto f7 = F(7);
    std::mt19937_64 rng(2024);
    auto random_xy = [&](long maxy) {
        XYPoly p(f7);
        for (int t = 0; t < 5; ++t)
            p.add_term(static_cast<long long>(rng() % 5) - 1, static_cast<long>(rng() % (maxy + 1)),
                       FieldElement::from_integer(f7, static_cast<long>(rng() % 7)));
        if (p.is_zero()) p.add_term(0, 0, FieldElement::one(f7));
        return p;
    };
    for (int trial = 0; trial < 25; ++trial) {
        XYPoly a = random_xy(3), b = random_xy(2);
        XYPoly prod = a * b;
        if (b.is_zero()) continue;
        CHECK(prod.divexact(b) == a);
        // Evaluation is multiplicative.
        FieldElement xv = FieldElement::from_integer(f7, 1 + static_cast<long>(rng() % 6));
        FieldElement yv = FieldElement::from_integer(f7, static_cast<long>(rng() % 7));
        CHECK(eval(prod, xv, yv) == eval(a, xv, yv) * eval(b, xv, yv));
    }
}
