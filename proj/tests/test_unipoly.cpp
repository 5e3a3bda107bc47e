#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "compoly/unipoly.hpp"

using namespace compoly;

namespace {

FieldCtx Q() { return FieldContext::make(FieldConfig::rational()); }
FieldCtx F(long p, long e = 1) { return FieldContext::make(FieldConfig::finite(p, e)); }

UnivariatePoly poly(const FieldCtx& ctx, std::vector<long> coeffs) {
    std::vector<FieldElement> c;
    for (long v : coeffs) c.push_back(FieldElement::from_integer(ctx, v));
    return UnivariatePoly::from_coeffs(ctx, std::move(c));
}

UnivariatePoly random_poly(const FieldCtx& ctx, long deg, std::mt19937_64& rng, long span = 9) {
    std::vector<FieldElement> c;
    for (long k = 0; k <= deg; ++k)
        c.push_back(FieldElement::from_integer(ctx, static_cast<long>(rng() % span) - span / 2));
    if (c.back().is_zero()) c.back() = FieldElement::one(ctx);
    return UnivariatePoly::from_coeffs(ctx, std::move(c));
}

// Independent oracle: Sylvester-matrix determinant by Gaussian elimination.
FieldElement sylvester_resultant(const UnivariatePoly& f, const UnivariatePoly& g) {
    long m = f.deg(), n = g.deg();
    const FieldCtx& ctx = f.ctx();
    if (m == 0) return f.coeff(0).pow(n);
    if (n == 0) return g.coeff(0).pow(m);
    long size = m + n;
    std::vector<std::vector<FieldElement>> a(size,
                                             std::vector<FieldElement>(size, FieldElement::zero(ctx)));
    for (long r = 0; r < n; ++r)
        for (long k = 0; k <= m; ++k) a[r][r + k] = f.coeff(m - k);
    for (long r = 0; r < m; ++r)
        for (long k = 0; k <= n; ++k) a[n + r][r + k] = g.coeff(n - k);
    FieldElement det = FieldElement::one(ctx);
    for (long col = 0; col < size; ++col) {
        long pivot = -1;
        for (long r = col; r < size; ++r)
            if (!a[r][col].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return FieldElement::zero(ctx);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        FieldElement inv = a[col][col].inverse();
        for (long r = col + 1; r < size; ++r) {
            if (a[r][col].is_zero()) continue;
            FieldElement factor = a[r][col] * inv;
            for (long c2 = col; c2 < size; ++c2) a[r][c2] -= factor * a[col][c2];
        }
    }
    return det;
}

} // namespace

TEST_CASE("basic polynomial arithmetic and division") {
    auto q = Q();
    UnivariatePoly f = poly(q, {2, -3, 1}); // (x-1)(x-2)
    CHECK(f == UnivariatePoly::linear_root(FieldElement::one(q)) *
                   UnivariatePoly::linear_root(FieldElement::from_integer(q, 2)));
    CHECK(f.evaluate(FieldElement::from_integer(q, 1)).is_zero());
    CHECK(f.evaluate(FieldElement::from_integer(q, 3)) == FieldElement::from_integer(q, 2));
    CHECK(f.derivative() == poly(q, {-3, 2}));

    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        UnivariatePoly a = random_poly(q, 1 + static_cast<long>(rng() % 5), rng);
        UnivariatePoly b = random_poly(q, 1 + static_cast<long>(rng() % 3), rng);
        UnivariatePoly quo, rem;
        divrem(a, b, quo, rem);
        CHECK(a == quo * b + rem);
        CHECK((rem.is_zero() || rem.deg() < b.deg()));
    }
}

TEST_CASE("substitution composes polynomials") {
    auto q = Q();
    UnivariatePoly f = poly(q, {0, 0, 1});  // x^2
    UnivariatePoly g = poly(q, {1, 1});     // x + 1
    CHECK(f.substitute(g) == poly(q, {1, 2, 1}));
    CHECK(g.substitute(f) == poly(q, {1, 0, 1}));
}

TEST_CASE("resultant matches the defining product") {
    auto q = Q();
    // Res(z - a, g) = g(a)
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        FieldElement a = FieldElement::from_integer(q, static_cast<long>(rng() % 11) - 5);
        UnivariatePoly g = random_poly(q, 1 + static_cast<long>(rng() % 4), rng);
        CHECK(resultant(UnivariatePoly::linear_root(a), g) == g.evaluate(a));
    }
    // Res(z^2 - 1, z - 3) = (3-1)(3+1) = 8
    CHECK(resultant(poly(q, {-1, 0, 1}), poly(q, {-3, 1})) == FieldElement::from_integer(q, 8));
    // Res(f, 1) = 1
    CHECK(resultant(poly(q, {4, 3, 0, 1}), UnivariatePoly::one(q)).is_one());
    CHECK_THROWS_AS(resultant(UnivariatePoly::zero(q), UnivariatePoly::zero(q)), Error);
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
    std::mt19937_64 rng(77);
    for (const auto& ctx : {Q(), FieldContext::make(FieldConfig::cyclotomic(8)), F(13)}) {
        for (int i = 0; i < 15; ++i) {
            UnivariatePoly f = random_poly(ctx, 1 + static_cast<long>(rng() % 4), rng);
            UnivariatePoly g = random_poly(ctx, 1 + static_cast<long>(rng() % 4), rng);
            CHECK(resultant(f, g) == sylvester_resultant(f, g));
        }
    }
}

TEST_CASE("resultant symmetry and gcd detection") {
    std::mt19937_64 rng(5);
    auto q = Q();
    auto f13 = F(13);
    for (int i = 0; i < 15; ++i) {
        for (const auto& ctx : {q, f13}) {
            UnivariatePoly f = random_poly(ctx, 1 + static_cast<long>(rng() % 4), rng);
            UnivariatePoly g = random_poly(ctx, 1 + static_cast<long>(rng() % 4), rng);
            FieldElement r1 = resultant(f, g);
            FieldElement r2 = resultant(g, f);
            FieldElement expect = ((f.deg() * g.deg()) % 2 == 1) ? -r1 : r1;
            CHECK(r2 == expect);
            CHECK(r1.is_zero() == (gcd(f, g).deg() > 0));
        }
        // Force a shared factor to exercise the zero path.
        UnivariatePoly shared = random_poly(q, 1, rng);
        UnivariatePoly f = shared * random_poly(q, 1 + static_cast<long>(rng() % 3), rng);
        UnivariatePoly g = shared * random_poly(q, 1 + static_cast<long>(rng() % 3), rng);
        CHECK(resultant(f, g).is_zero());
    }
}

TEST_CASE("gcd computes monic greatest common divisors") {
    auto q = Q();
    UnivariatePoly f = poly(q, {2, -3, 1}); // (x-1)(x-2)
    UnivariatePoly g = poly(q, {6, -5, 1}); // (x-2)(x-3)
    CHECK(gcd(f, g) == poly(q, {-2, 1}));
    CHECK(gcd(f, f) == f);
    CHECK(gcd(f.scaled(FieldElement::from_integer(q, 7)), UnivariatePoly::zero(q)) == f);
    CHECK(gcd(poly(q, {-1, 0, 1}), poly(q, {-1, 1})) == poly(q, {-1, 1}));
}

TEST_CASE("irreducibility over small prime fields") {
    auto f2 = F(2);
    CHECK(is_irreducible(poly(f2, {1, 1, 1})));
    CHECK(!is_irreducible(poly(f2, {1, 0, 1}))); // (z+1)^2
    CHECK(is_irreducible(poly(f2, {0, 1})));
    CHECK_THROWS_AS(is_irreducible(poly(Q(), {1, 1, 1})), Error);
    try {
        is_irreducible(poly(Q(), {1, 1}));
        FAIL("expected NotFiniteField");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotFiniteField);
    }
}

TEST_CASE("irreducibility agrees with trial division over F_2 and F_3") {
    for (long p : {2L, 3L}) {
        auto ctx = F(p);
        // Enumerate every monic polynomial of each degree via base-p digits.
        auto nth_monic = [&](long deg, long index) {
            std::vector<FieldElement> c;
            for (long k = 0; k < deg; ++k) {
                c.push_back(FieldElement::from_integer(ctx, index % p));
                index /= p;
            }
            c.push_back(FieldElement::one(ctx));
            return UnivariatePoly::from_coeffs(ctx, std::move(c));
        };
        long count_checked = 0;
        for (long deg = 2; deg <= 6; ++deg) {
            long total = 1;
            for (long k = 0; k < deg; ++k) total *= p;
            for (long idx = 0; idx < total; ++idx) {
                UnivariatePoly f = nth_monic(deg, idx);
                bool divisible = false;
                for (long d = 1; !divisible && 2 * d <= deg; ++d) {
                    long dt = 1;
                    for (long k = 0; k < d; ++k) dt *= p;
                    for (long j = 0; !divisible && j < dt; ++j)
                        if ((f % nth_monic(d, j)).is_zero()) divisible = true;
                }
                CHECK(is_irreducible(f) == !divisible);
                ++count_checked;
            }
        }
        CHECK(count_checked > 0);
    }
}

TEST_CASE("roots in field with multiplicity") {
    auto f7 = F(7);
    auto roots = roots_in_field(poly(f7, {-1, 0, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].first == FieldElement::from_integer(f7, 1));
    CHECK(roots[0].second == 1);
    CHECK(roots[1].first == FieldElement::from_integer(f7, 6));
    CHECK(roots[1].second == 1);

    // z - a
    CHECK(roots_in_field(UnivariatePoly::linear_root(FieldElement::from_integer(f7, 4))) ==
          std::vector<std::pair<FieldElement, long>>{{FieldElement::from_integer(f7, 4), 1}});

    // z^2 + z + 1 over F_2: both residues fail, roots live upstairs.
    auto f2 = F(2);
    for (long a = 0; a < 2; ++a)
        CHECK((a * a + a + 1) % 2 != 0);
    CHECK(roots_in_field(poly(f2, {1, 1, 1})).empty());

    // Multiplicities: (z-2)^3 (z-5) over F_7.
    UnivariatePoly m = UnivariatePoly::linear_root(FieldElement::from_integer(f7, 2)).pow(3) *
                       UnivariatePoly::linear_root(FieldElement::from_integer(f7, 5));
    auto mr = roots_in_field(m);
    REQUIRE(mr.size() == 2);
    CHECK(mr[0].first == FieldElement::from_integer(f7, 2));
    CHECK(mr[0].second == 3);
    CHECK(mr[1].second == 1);
}

TEST_CASE("root finding rejects vanishing derivatives") {
    auto f7 = F(7);
    // z^7 - 1 has derivative 7 z^6 = 0.
    std::vector<FieldElement> c(8, FieldElement::zero(f7));
    c[0] = -FieldElement::one(f7);
    c[7] = FieldElement::one(f7);
    try {
        roots_in_field(UnivariatePoly::from_coeffs(f7, std::move(c)));
        FAIL("expected InseparableInput");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InseparableInput);
    }
}

TEST_CASE("complete root sets reconstruct the polynomial") {
    auto f9 = F(3, 2);
    std::mt19937_64 rng(99);
    auto all = enumerate_field(f9);
    for (int trial = 0; trial < 10; ++trial) {
        UnivariatePoly f = UnivariatePoly::one(f9);
        long n = 2 + static_cast<long>(rng() % 3);
        for (long i = 0; i < n; ++i) f *= UnivariatePoly::linear_root(all[rng() % all.size()]);
        auto roots = roots_in_field(f, 17);
        long total = 0;
        UnivariatePoly rebuilt = UnivariatePoly::one(f9);
        for (const auto& [a, mult] : roots) {
            total += mult;
            rebuilt *= UnivariatePoly::linear_root(a).pow(mult);
        }
        CHECK(total == f.deg());
        CHECK(rebuilt == f);
        // Seed changes the splitting path, not the sorted answer.
        CHECK(roots_in_field(f, 12345) == roots);
    }
}

TEST_CASE("text rendering of univariate polynomials") {
    auto q = Q();
    CHECK(poly(q, {4, 0, -3, 1}).to_string() == "x^3 - 3*x^2 + 4");
    CHECK(poly(q, {0, 1}).to_string("z") == "z");
    CHECK(UnivariatePoly::zero(q).to_string() == "0");
    CHECK(UnivariatePoly::from_coeffs(
              q, {FieldElement::from_rational(q, make_rat(-1, 2)), FieldElement::one(q)})
              .to_string() == "x - 1/2");
    auto c8 = FieldContext::make(FieldConfig::cyclotomic(8));
    UnivariatePoly zc = UnivariatePoly::from_coeffs(
        c8, {cyclotomic_generator_power(c8, 1) + FieldElement::one(c8), FieldElement::one(c8)});
    CHECK(zc.to_string() == "x + (w + 1)");
}
