#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "compoly/compose_uni.hpp"
#include "compoly/error.hpp"
#include "compoly/field.hpp"
#include "compoly/unipoly.hpp"

using namespace compoly;

namespace {

FieldCtx F(long p, long e = 1) { return FieldContext::make(FieldConfig::finite(Int(p), e)); }

UnivariatePoly upoly(const FieldCtx& ctx, std::vector<long> coeffs) {
    std::vector<FieldElement> c;
    for (long v : coeffs) c.push_back(FieldElement::from_integer(ctx, Int(v)));
    return UnivariatePoly::from_coeffs(ctx, std::move(c));
}

// Every monic polynomial of exact degree d, ordered by coefficient tuple with
// the constant term varying fastest.
std::vector<UnivariatePoly> all_monic(const FieldCtx& ctx, long d) {
    std::vector<FieldElement> elems = enumerate_field(ctx);
    std::vector<UnivariatePoly> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<FieldElement> cs;
        for (std::size_t i : idx) cs.push_back(elems[i]);
        cs.push_back(FieldElement::one(ctx));
        out.push_back(UnivariatePoly::from_coeffs(ctx, std::move(cs)));
        std::size_t pos = 0;
        while (pos < idx.size()) {
            if (++idx[pos] < elems.size()) break;
            idx[pos] = 0;
            ++pos;
        }
        if (pos == idx.size()) break;
    }
    return out;
}

UnivariatePoly nth_irreducible(const FieldCtx& ctx, long d, std::size_t skip = 0,
                               bool unit_roots = false) {
    for (const UnivariatePoly& f : all_monic(ctx, d)) {
        if (unit_roots && f.coeff(0).is_zero()) continue;
        if (!is_irreducible(f)) continue;
        if (skip == 0) return f;
        --skip;
    }
    FAIL("no such irreducible");
    return UnivariatePoly::zero(ctx);
}

UnivariatePoly random_monic(const FieldCtx& ctx, long d, std::mt19937_64& rng,
                            bool unit_roots = false) {
    std::vector<FieldElement> elems = enumerate_field(ctx);
    while (true) {
        std::vector<FieldElement> cs;
        for (long i = 0; i < d; ++i) cs.push_back(elems[rng() % elems.size()]);
        cs.push_back(FieldElement::one(ctx));
        UnivariatePoly f = UnivariatePoly::from_coeffs(ctx, std::move(cs));
        if (unit_roots && f.coeff(0).is_zero()) continue;
        return f;
    }
}

// Coefficient-wise inclusion of a prime-field polynomial into an extension.
UnivariatePoly lift(const UnivariatePoly& f, const FieldCtx& K) {
    std::vector<FieldElement> cs;
    for (const FieldElement& c : f.coeffs())
        cs.push_back(FieldElement::from_integer(K, c.ff_coords()[0]));
    return UnivariatePoly::from_coeffs(K, std::move(cs));
}

// Independent oracle: combine the two root multisets inside a splitting field
// K and expand prod prod (x - a <> b) directly.
UnivariatePoly pair_oracle(const UnivariatePoly& f, const UnivariatePoly& g, DiamondKind kind,
                           const FieldCtx& K) {
    auto rf = roots_in_field(lift(f, K));
    auto rg = roots_in_field(lift(g, K));
    long cf = 0, cg = 0;
    for (const auto& [r, m] : rf) cf += m;
    for (const auto& [r, m] : rg) cg += m;
    REQUIRE(cf == f.deg());
    REQUIRE(cg == g.deg());
    UnivariatePoly acc = UnivariatePoly::one(K);
    for (const auto& [a, ma] : rf)
        for (const auto& [b, mb] : rg) {
            FieldElement r = kind == DiamondKind::multiplication ? a * b : a + b;
            acc *= UnivariatePoly::linear_root(r).pow(ma * mb);
        }
    return acc;
}

// Roots with multiplicity by trying every field element; unlike
// roots_in_field this does not care about separability.
std::vector<std::pair<FieldElement, long>> roots_by_scan(const UnivariatePoly& f) {
    std::vector<std::pair<FieldElement, long>> out;
    UnivariatePoly rem = f;
    for (const FieldElement& a : enumerate_field(f.ctx())) {
        long m = 0;
        while (!rem.is_constant() && rem.evaluate(a).is_zero()) {
            rem = rem / UnivariatePoly::linear_root(a);
            ++m;
        }
        if (m > 0) out.emplace_back(a, m);
    }
    return out;
}

bool associate(const UnivariatePoly& a, const UnivariatePoly& b, DiamondKind kind) {
    for (const FieldElement& c : enumerate_field(a.ctx())) {
        if (kind == DiamondKind::multiplication && c.is_zero()) continue;
        if (composed_uni(UnivariatePoly::linear_root(c), b, kind) == a) return true;
    }
    return false;
}

} // namespace

TEST_CASE("composed sum and multiplication over F_2 match hand values") {
    FieldCtx f2 = F(2);
    UnivariatePoly f = upoly(f2, {1, 1, 1}); // x^2 + x + 1, roots = cube roots of 1 in F_4

    UnivariatePoly sum = composed_sum_uni(f, f);
    CHECK(sum == upoly(f2, {0, 0, 1, 0, 1})); // x^4 + x^2: pair sums {0, 1, 1, 0}

    UnivariatePoly mul = composed_mul_uni(f, f);
    UnivariatePoly expect = upoly(f2, {1, 1, 1}) * upoly(f2, {1, 1}) * upoly(f2, {1, 1});
    CHECK(mul == expect); // (x^2+x+1)(x+1)^2: pair products {a^2, 1, 1, a}

    // the same values out of explicit root enumeration in F_4
    FieldCtx f4 = F(2, 2);
    CHECK(lift(sum, f4) == pair_oracle(f, f, DiamondKind::addition, f4));
    CHECK(lift(mul, f4) == pair_oracle(f, f, DiamondKind::multiplication, f4));
}

TEST_CASE("identity elements and degree law") {
    std::mt19937_64 rng(2024);
    for (long p : {2L, 3L, 5L}) {
        FieldCtx ctx = F(p);
        UnivariatePoly x = UnivariatePoly::variable(ctx);
        UnivariatePoly xm1 = UnivariatePoly::linear_root(FieldElement::one(ctx));
        for (int trial = 0; trial < 6; ++trial) {
            UnivariatePoly f = random_monic(ctx, 1 + static_cast<long>(rng() % 4), rng, true);
            CHECK(composed_sum_uni(f, x) == f);
            CHECK(composed_sum_uni(x, f) == f);
            CHECK(composed_mul_uni(f, xm1) == f);
            CHECK(composed_mul_uni(xm1, f) == f);

            UnivariatePoly g = random_monic(ctx, 1 + static_cast<long>(rng() % 3), rng, true);
            for (DiamondKind kind : {DiamondKind::addition, DiamondKind::multiplication}) {
                UnivariatePoly h = composed_uni(f, g, kind);
                CHECK(h.deg() == f.deg() * g.deg());
                CHECK(h.is_monic());
            }
        }
    }
}

TEST_CASE("input validation") {
    FieldCtx f3 = F(3);
    UnivariatePoly f = upoly(f3, {1, 1, 1});
    CHECK_THROWS_WITH_AS(composed_sum_uni(f, upoly(f3, {2})), doctest::Contains("monic"),
                         Error);
    CHECK_THROWS_WITH_AS(composed_sum_uni(f, upoly(f3, {1, 2})), doctest::Contains("monic"),
                         Error);
    CHECK_THROWS_AS(composed_mul_uni(upoly(f3, {0, 1, 1}), f), Error); // vanishes at 0
    try {
        composed_mul_uni(f, upoly(f3, {0, 2, 1}));
        FAIL("expected ZeroRoot");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroRoot);
    }
    FieldCtx q = FieldContext::make(FieldConfig::rational());
    std::vector<FieldElement> rc{FieldElement::one(q), FieldElement::one(q)};
    UnivariatePoly overq = UnivariatePoly::from_coeffs(q, rc);
    try {
        composed_sum_uni(overq, overq);
        FAIL("expected NotFiniteField");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotFiniteField);
    }
}

TEST_CASE("agreement with root-pair enumeration, exhaustive small degrees") {
    for (long p : {2L, 3L}) {
        FieldCtx ctx = F(p);
        FieldCtx K = F(p, 6); // lcm(1,2,3) = 6: every degree <= 3 factor splits
        std::vector<UnivariatePoly> polys;
        for (long d = 1; d <= 3; ++d)
            for (const UnivariatePoly& f : all_monic(ctx, d)) polys.push_back(f);
        // root multisets once per polynomial
        std::vector<std::vector<std::pair<FieldElement, long>>> roots;
        for (const UnivariatePoly& f : polys) {
            roots.push_back(roots_by_scan(lift(f, K)));
            long total = 0;
            for (const auto& [r, m] : roots.back()) total += m;
            REQUIRE(total == f.deg()); // every degree <= 3 polynomial splits in K
        }

        long checked = 0;
        for (std::size_t i = 0; i < polys.size(); ++i)
            for (std::size_t j = 0; j < polys.size(); ++j) {
                const UnivariatePoly& f = polys[i];
                const UnivariatePoly& g = polys[j];
                for (DiamondKind kind : {DiamondKind::addition, DiamondKind::multiplication}) {
                    if (kind == DiamondKind::multiplication &&
                        (f.coeff(0).is_zero() || g.coeff(0).is_zero()))
                        continue;
                    UnivariatePoly got = composed_uni(f, g, kind);
                    UnivariatePoly want = UnivariatePoly::one(K);
                    for (const auto& [a, ma] : roots[i])
                        for (const auto& [b, mb] : roots[j]) {
                            FieldElement r =
                                kind == DiamondKind::multiplication ? a * b : a + b;
                            want *= UnivariatePoly::linear_root(r).pow(ma * mb);
                        }
                    REQUIRE(lift(got, K) == want);
                    ++checked;
                }
            }
        CHECK(checked > 0);
    }
}

TEST_CASE("irreducibility criterion reports") {
    FieldCtx f2 = F(2);
    UnivariatePoly d2 = upoly(f2, {1, 1, 1});
    UnivariatePoly d3 = upoly(f2, {1, 1, 0, 1});
    REQUIRE(is_irreducible(d2));
    REQUIRE(is_irreducible(d3));

    CriterionReport r = check_irreducibility_criterion(d2, d3, DiamondKind::multiplication);
    CHECK(r.product_irreducible);
    CHECK(r.product.deg() == 6);
    CHECK(r.holds);

    r = check_irreducibility_criterion(d2, d2, DiamondKind::multiplication);
    CHECK_FALSE(r.degrees_coprime);
    CHECK_FALSE(r.product_irreducible);
    CHECK(r.holds);

    UnivariatePoly red = upoly(f2, {1, 0, 1}); // (x+1)^2
    r = check_irreducibility_criterion(red, d3, DiamondKind::addition);
    CHECK_FALSE(r.f_irreducible);
    CHECK_FALSE(r.product_irreducible);
    CHECK(r.holds);
}

TEST_CASE("irreducibility criterion biconditional, exhaustive") {
    for (long p : {2L, 3L}) {
        FieldCtx ctx = F(p);
        for (long m : {2L, 3L, 4L})
            for (long n : {2L, 3L, 4L}) {
                if (m * n > 8) continue;
                for (const UnivariatePoly& f : all_monic(ctx, m))
                    for (const UnivariatePoly& g : all_monic(ctx, n))
                        for (DiamondKind kind :
                             {DiamondKind::addition, DiamondKind::multiplication}) {
                            if (kind == DiamondKind::multiplication &&
                                (f.coeff(0).is_zero() || g.coeff(0).is_zero()))
                                continue;
                            REQUIRE(check_irreducibility_criterion(f, g, kind).holds);
                        }
            }
    }
}

TEST_CASE("Frobenius stability of composed products") {
    std::mt19937_64 rng(7);
    for (long p : {2L, 3L, 5L}) {
        FieldCtx ctx = F(p);
        UnivariatePoly xq = UnivariatePoly::monomial(FieldElement::one(ctx), p);
        for (int trial = 0; trial < 8; ++trial) {
            UnivariatePoly f = random_monic(ctx, 1 + static_cast<long>(rng() % 3), rng, true);
            UnivariatePoly g = random_monic(ctx, 1 + static_cast<long>(rng() % 3), rng, true);
            for (DiamondKind kind : {DiamondKind::addition, DiamondKind::multiplication}) {
                UnivariatePoly h = composed_uni(f, g, kind);
                CHECK(h.pow(p) == h.substitute(xq));
            }
        }
    }
}

TEST_CASE("composed operations are commutative and associative") {
    std::mt19937_64 rng(99);
    FieldCtx ctx = F(5);
    for (int trial = 0; trial < 5; ++trial) {
        UnivariatePoly f = random_monic(ctx, 1 + static_cast<long>(rng() % 3), rng, true);
        UnivariatePoly g = random_monic(ctx, 1 + static_cast<long>(rng() % 3), rng, true);
        UnivariatePoly h = random_monic(ctx, 1 + static_cast<long>(rng() % 2), rng, true);
        for (DiamondKind kind : {DiamondKind::addition, DiamondKind::multiplication}) {
            CHECK(composed_uni(f, g, kind) == composed_uni(g, f, kind));
            CHECK(composed_uni(composed_uni(f, g, kind), h, kind) ==
                  composed_uni(f, composed_uni(g, h, kind), kind));
        }
    }
}

TEST_CASE("decomposition round trip over F_5") {
    FieldCtx ctx = F(5);
    UnivariatePoly g = nth_irreducible(ctx, 2, 0, true);
    UnivariatePoly h = nth_irreducible(ctx, 3, 1, true);

    for (DiamondKind kind : {DiamondKind::addition, DiamondKind::multiplication}) {
        UnivariatePoly f = composed_uni(g, h, kind);
        REQUIRE(is_irreducible(f));
        DecompositionResult d = decompose_uni(f, kind);
        REQUIRE(d.factors.size() == 2);
        CHECK(d.factors[0].deg() == 2);
        CHECK(d.factors[1].deg() == 3);
        CHECK(composed_uni(d.factors[0], d.factors[1], kind) == f);
        CHECK(associate(d.factors[0], g, kind));
        CHECK(associate(d.factors[1], h, kind));

        // every alternate decomposition is unit-related to the primary one,
        // with the units combining to the identity of the law
        CHECK(!d.alternates.empty());
        if (kind == DiamondKind::addition) CHECK(d.alternates.size() == 4);
        for (const auto& alt : d.alternates) {
            REQUIRE(alt.factors.size() == 2);
            REQUIRE(alt.units.size() == 2);
            CHECK(composed_uni(alt.factors[0], alt.factors[1], kind) == f);
            FieldElement combined = kind == DiamondKind::multiplication
                                        ? FieldElement::one(ctx)
                                        : FieldElement::zero(ctx);
            for (std::size_t i = 0; i < 2; ++i) {
                std::size_t j = alt.permutation[i];
                CHECK(composed_uni(UnivariatePoly::linear_root(alt.units[i]), d.factors[i],
                                   kind) == alt.factors[j]);
                combined = kind == DiamondKind::multiplication ? combined * alt.units[i]
                                                               : combined + alt.units[i];
            }
            CHECK((kind == DiamondKind::multiplication ? combined.is_one() : combined.is_zero()));
        }
    }
}

TEST_CASE("decomposition over a non-prime base field") {
    FieldCtx f4 = F(2, 2);
    UnivariatePoly g = nth_irreducible(f4, 2, 0, true);
    UnivariatePoly h = nth_irreducible(f4, 3, 0, true);
    UnivariatePoly f = composed_mul_uni(g, h);
    REQUIRE(is_irreducible(f));

    DecompositionResult d = decompose_uni(f, DiamondKind::multiplication);
    REQUIRE(d.factors.size() == 2);
    CHECK(composed_mul_uni(d.factors[0], d.factors[1]) == f);
    CHECK(associate(d.factors[0], g, DiamondKind::multiplication));
    CHECK(associate(d.factors[1], h, DiamondKind::multiplication));
}

TEST_CASE("indecomposable inputs come back whole") {
    // prime degree: no coprime splitting of the degree exists
    FieldCtx f3 = F(3);
    UnivariatePoly f5 = nth_irreducible(f3, 5, 0, true);
    DecompositionResult d = decompose_uni(f5, DiamondKind::multiplication);
    CHECK(d.factors.size() == 1);
    CHECK(d.factors[0] == f5);
    CHECK(d.alternates.empty());

    // composite degree with no coprime factorization (4 = 2*2)
    FieldCtx f2 = F(2);
    UnivariatePoly f4 = upoly(f2, {1, 1, 0, 0, 1});
    REQUIRE(is_irreducible(f4));
    d = decompose_uni(f4, DiamondKind::addition);
    CHECK(d.factors.size() == 1);
    CHECK(d.factors[0] == f4);
}

TEST_CASE("decomposability agrees with forward enumeration in degree 6 over F_2") {
    FieldCtx ctx = F(2);
    std::vector<UnivariatePoly> deg2, deg3;
    for (const UnivariatePoly& f : all_monic(ctx, 2))
        if (is_irreducible(f)) deg2.push_back(f);
    for (const UnivariatePoly& f : all_monic(ctx, 3))
        if (is_irreducible(f)) deg3.push_back(f);

    for (DiamondKind kind : {DiamondKind::addition, DiamondKind::multiplication}) {
        std::vector<UnivariatePoly> composable;
        for (const UnivariatePoly& g : deg2)
            for (const UnivariatePoly& h : deg3) composable.push_back(composed_uni(g, h, kind));

        for (const UnivariatePoly& f : all_monic(ctx, 6)) {
            if (!is_irreducible(f)) continue;
            DecompositionResult d = decompose_uni(f, kind);
            bool forward = false;
            for (const UnivariatePoly& c : composable) forward = forward || c == f;
            CHECK(d.factors.size() == (forward ? 2 : 1));
            if (forward) CHECK(composed_uni(d.factors[0], d.factors[1], kind) == f);
        }
    }
}

TEST_CASE("decomposition guards and budget") {
    FieldCtx ctx = F(5);
    UnivariatePoly g = nth_irreducible(ctx, 2, 0, true);
    UnivariatePoly h = nth_irreducible(ctx, 3, 0, true);
    UnivariatePoly f = composed_mul_uni(g, h);

    try {
        decompose_uni(f, DiamondKind::multiplication, Int(10));
        FAIL("expected SearchBudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SearchBudgetExceeded);
    }

    UnivariatePoly reducible = g * h;
    try {
        decompose_uni(reducible, DiamondKind::addition);
        FAIL("expected UsageError");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UsageError);
    }

    // x^2 + x vanishes at 0: not a unit-group member for multiplication
    try {
        decompose_uni(upoly(ctx, {0, 3, 1}), DiamondKind::multiplication);
        FAIL("expected error");
    } catch (const Error&) {
    }
}
