#include "compoly/newton_puiseux.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "compoly/error.hpp"

namespace compoly {

namespace {

// ---- rational root extraction (exact, via modular lifting) -------------

// Coordinates of a characteristic-zero element over Q.
std::vector<Rat> coords_of(const FieldElement& a, long dim) {
    if (a.ctx()->kind() == FieldKind::Rational) return {a.rational_value()};
    std::vector<Rat> c = a.coords();
    c.resize(static_cast<size_t>(dim), Rat(0));
    return c;
}

Int eval_int_poly(const std::vector<Int>& f, const Int& r, const Int& mod) {
    Int acc = 0;
    for (size_t k = f.size(); k-- > 0;) acc = (acc * r + f[k]) % mod;
    return acc;
}

// All rational roots of a Q-coefficient polynomial (low first), without
// multiplicity. Roots n/d of a primitive integer polynomial satisfy n | a_0
// and d | a_deg, so after a squarefree reduction the roots are recovered from
// one modular image by Hensel lifting and rational reconstruction.
std::vector<Rat> rational_roots(std::vector<Rat> f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    std::vector<Rat> roots;
    if (f.size() <= 1) return roots;

    // strip x^k, recording the zero root
    size_t low = 0;
    while (low < f.size() && f[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(Rat(0));
        f.erase(f.begin(), f.begin() + static_cast<long>(low));
        if (f.size() <= 1) return roots;
    }

    // squarefree part over Q
    auto Q = FieldContext::make(FieldConfig::rational());
    std::vector<FieldElement> fe;
    fe.reserve(f.size());
    for (const Rat& c : f) fe.push_back(FieldElement::from_rational(Q, c));
    UnivariatePoly F = UnivariatePoly::from_coeffs(Q, std::move(fe));
    UnivariatePoly G = gcd(F, F.derivative());
    if (G.deg() > 0) F = F / G;

    // integer primitive version
    Int den_lcm = 1;
    for (long k = 0; k <= F.deg(); ++k) {
        Int d = F.coeff(k).rational_value().get_den();
        den_lcm = den_lcm / gcd(den_lcm, d) * d;
    }
    std::vector<Int> zf(static_cast<size_t>(F.deg()) + 1);
    Int content = 0;
    for (long k = 0; k <= F.deg(); ++k) {
        Rat c = F.coeff(k).rational_value() * den_lcm;
        zf[static_cast<size_t>(k)] = c.get_num();
        content = gcd(content, zf[static_cast<size_t>(k)]);
    }
    for (Int& c : zf) c /= content;

    Int a0 = zf.front(), an = zf.back();
    Int target = 2 * abs(a0) * abs(an) + 1;

    // a prime where the squarefree image stays squarefree
    Int p = 1000003;
    FieldCtx Fp;
    UnivariatePoly Fbar;
    for (;;) {
        if (mpz_divisible_p(an.get_mpz_t(), p.get_mpz_t()) == 0) {
            Fp = FieldContext::make(FieldConfig::finite(p, 1));
            std::vector<FieldElement> mc;
            mc.reserve(zf.size());
            for (const Int& c : zf) mc.push_back(FieldElement::from_integer(Fp, c));
            Fbar = UnivariatePoly::from_coeffs(Fp, std::move(mc));
            if (gcd(Fbar, Fbar.derivative()).deg() == 0) break;
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }

    std::vector<Int> dzf(zf.size() > 1 ? zf.size() - 1 : 0);
    for (size_t k = 1; k < zf.size(); ++k) dzf[k - 1] = Int(static_cast<long>(k)) * zf[k];

    for (const auto& [relem, mult] : roots_in_field(Fbar)) {
        // Hensel lift the simple root to a modulus past the reconstruction bound
        Int r = relem.ff_coords().front();
        Int mod = p;
        while (mod < target) {
            mod = mod * mod;
            Int fr = eval_int_poly(zf, r, mod);
            Int dfr = eval_int_poly(dzf, r, mod);
            Int inv;
            if (mpz_invert(inv.get_mpz_t(), dfr.get_mpz_t(), mod.get_mpz_t()) == 0) break;
            r = ((r - fr * inv) % mod + mod) % mod;
        }
        if (mod < target) continue;

        // rational reconstruction: n == r*d (mod m), |n| <= |a0|, 0 < d <= |an|
        Int r0 = mod, r1 = r, s0 = 0, s1 = 1;
        Int nbound = abs(a0);
        while (r1 > nbound) {
            Int q = r0 / r1;
            Int r2 = r0 - q * r1;
            Int s2 = s0 - q * s1;
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        if (s1 == 0) continue;
        Int num = r1, den = s1;
        if (den < 0) { num = -num; den = -den; }
        if (den > abs(an)) continue;

        // verify exactly: sum zf[k] num^k den^{deg-k} must vanish
        Int check = 0;
        Int np = 1;
        std::vector<Int> dpows(zf.size());
        dpows.back() = 1;
        for (size_t k = zf.size() - 1; k-- > 0;) dpows[k] = dpows[k + 1] * den;
        for (size_t k = 0; k < zf.size(); ++k) {
            check += zf[k] * np * dpows[k];
            np *= num;
        }
        if (check == 0) roots.push_back(make_rat(num, den));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Distinct roots of f lying in its characteristic-zero coefficient field.
// Rational roots are found completely; cyclotomic roots are searched in the
// monomial form r * w with w a root of unity and r rational (the same shape
// the canonical nth-root rule produces).
std::vector<FieldElement> char0_distinct_roots(const UnivariatePoly& f) {
    const FieldCtx& K = f.ctx();
    long dim = K->kind() == FieldKind::Rational ? 1 : K->degree();
    auto Q = FieldContext::make(FieldConfig::rational());

    std::set<std::string> seen;
    std::vector<FieldElement> out;
    auto consider = [&](const FieldElement& cand) {
        if (!f.evaluate(cand).is_zero()) return;
        if (seen.insert(cand.to_string()).second) out.push_back(cand);
    };

    consider(FieldElement::zero(K));

    std::vector<FieldElement> torsion = K->kind() == FieldKind::Rational
                                            ? std::vector<FieldElement>{FieldElement::one(K),
                                                                        -FieldElement::one(K)}
                                            : all_roots_of_unity(K);
    for (const FieldElement& w : torsion) {
        // coordinatewise polynomials of f(r*w) in the rational unknown r
        std::vector<std::vector<Rat>> coord(static_cast<size_t>(dim));
        for (auto& v : coord) v.assign(static_cast<size_t>(f.deg()) + 1, Rat(0));
        FieldElement wp = FieldElement::one(K);
        for (long k = 0; k <= f.deg(); ++k) {
            std::vector<Rat> cs = coords_of(f.coeff(k) * wp, dim);
            for (long l = 0; l < dim; ++l) coord[static_cast<size_t>(l)][static_cast<size_t>(k)] = cs[static_cast<size_t>(l)];
            wp = wp * w;
        }
        // a common root of all coordinate polynomials: gcd over Q
        UnivariatePoly g = UnivariatePoly::zero(Q);
        for (long l = 0; l < dim; ++l) {
            std::vector<FieldElement> ge;
            for (const Rat& c : coord[static_cast<size_t>(l)])
                ge.push_back(FieldElement::from_rational(Q, c));
            g = gcd(g, UnivariatePoly::from_coeffs(Q, std::move(ge)));
            if (g.deg() == 0) break;
        }
        if (g.is_zero() || g.deg() == 0) continue;
        std::vector<Rat> gr(static_cast<size_t>(g.deg()) + 1);
        for (long k = 0; k <= g.deg(); ++k) gr[static_cast<size_t>(k)] = g.coeff(k).rational_value();
        for (const Rat& r : rational_roots(std::move(gr)))
            consider(FieldElement::from_rational(K, r) * w);
    }
    std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) {
        return a.cmp(b) < 0;
    });
    return out;
}

// ---- expansion recursion ------------------------------------------------

// f(x^Q, x^P (c + y)), divided by the least power of x.
XYPoly np_substitute(const XYPoly& f, long long P, long long Q, const FieldElement& c) {
    const FieldCtx& K = f.ctx();
    long m = f.deg_y();
    std::vector<FieldElement> cpow(static_cast<size_t>(m) + 1);
    cpow[0] = FieldElement::one(K);
    for (long k = 1; k <= m; ++k) cpow[static_cast<size_t>(k)] = cpow[static_cast<size_t>(k - 1)] * c;

    XYPoly out(K);
    for (const auto& [key, a] : f.terms()) {
        auto [i, j] = key;
        long long xe = Q * i + P * j;
        for (long s = 0; s <= j; ++s) {
            Int b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(s));
            FieldElement coeff = a * FieldElement::from_integer(K, b) * cpow[static_cast<size_t>(j - s)];
            out.add_term(xe, s, coeff);
        }
    }
    if (!out.is_zero() && out.min_xexp() != 0) out = out.shifted_x(-out.min_xexp());
    return out;
}

// A tail series converted from the inner variable x^{1/Q} to the outer one.
PuiseuxSeries inner_to_outer(const PuiseuxSeries& tail, long long Q) {
    return PuiseuxSeries::from_terms(tail.ctx(), tail.ramification() * Q, tail.terms(),
                                     tail.truncation().scaled(make_rat(Int(1), Int(static_cast<long>(Q)))));
}

using TailList = std::vector<std::pair<PuiseuxSeries, long>>;

// All y-solutions of F(x, y) = 0 with val(y) > 0, modulo x^T (T > 0), as
// series with multiplicities. F has nonnegative x-exponents.
TailList expand_rec(const XYPoly& F, const Rat& T, int depth) {
    if (depth > 512) fail(Errc::UsageError, "branch expansion exceeded the recursion budget");
    const FieldCtx& K = F.ctx();
    TailList out;

    // exact zero solutions: the y-order of F
    long e = F.deg_y() + 1;
    for (const auto& [key, c] : F.terms()) e = std::min(e, key.second);
    XYPoly G(K);
    if (e > 0) {
        out.push_back({PuiseuxSeries::zero(K), e});
        for (const auto& [key, c] : F.terms()) G.add_term(key.first, key.second - e, c);
    } else {
        G = F;
    }

    for (const NewtonEdge& edge : newton_polygon(G).edges) {
        Rat gamma = make_rat(-edge.slope.get_den(), edge.slope.get_num());
        long long P = gamma.get_num().get_si();
        long long Q = gamma.get_den().get_si();

        // characteristic polynomial of the edge
        long jlo = edge.points.back().second;
        long jhi = edge.points.front().second;
        std::vector<FieldElement> psi(static_cast<size_t>(jhi - jlo) + 1, FieldElement::zero(K));
        for (const auto& [i, j] : edge.points) {
            FieldElement c = G.coeff(i, j);
            psi[static_cast<size_t>(j - jlo)] = psi[static_cast<size_t>(j - jlo)] + c;
        }
        UnivariatePoly chi = UnivariatePoly::from_coeffs(K, std::move(psi));

        auto roots = field_roots(chi);
        long found = 0;
        for (const auto& [c, mult] : roots) found += mult;
        if (found != jhi - jlo)
            fail(Errc::RootOutsideField,
                 "characteristic polynomial " + chi.to_string("c") +
                     " does not split over " + K->describe() +
                     "; rerun over a larger field");

        for (const auto& [c, mult] : roots) {
            if (!(gamma < T)) {
                // the whole branch lies at or beyond the window
                out.push_back({PuiseuxSeries::zero(K, Trunc::at(T)), mult});
                continue;
            }
            XYPoly Fh = np_substitute(G, P, Q, c);
            Rat That = (T - gamma) * Int(static_cast<long>(Q));
            PuiseuxSeries head = PuiseuxSeries::monomial(c, 0, 1);
            PuiseuxSeries shift =
                PuiseuxSeries::monomial(FieldElement::one(K), P, Q);
            for (auto& [tail, mt] : expand_rec(Fh, That, depth + 1)) {
                PuiseuxSeries branch = (head + inner_to_outer(tail, Q)) * shift;
                out.push_back({branch, mt});
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::pair<FieldElement, long>> field_roots(const UnivariatePoly& f) {
    if (f.is_zero()) fail(Errc::ZeroInput, "root extraction from the zero polynomial");
    if (f.ctx()->kind() == FieldKind::Finite) return roots_in_field(f);

    std::vector<std::pair<FieldElement, long>> out;
    UnivariatePoly rest = f;
    for (const FieldElement& c : char0_distinct_roots(f)) {
        UnivariatePoly lin = UnivariatePoly::linear_root(c);
        long mult = 0;
        for (;;) {
            UnivariatePoly q, r;
            divrem(rest, lin, q, r);
            if (!r.is_zero()) break;
            rest = q;
            ++mult;
        }
        out.push_back({c, mult});
    }
    return out;
}

BranchSet expand_branches(const ExpansionRequest& req) {
    if (!req.f.valid()) fail(Errc::ZeroInput, "no expansion input");
    if (!(req.truncation > 0)) fail(Errc::UsageError, "expansion depth must be positive");
    const FieldCtx& K = req.f.ctx();
    long m = req.f.deg_y();
    if (m < 1) fail(Errc::UsageError, "expansion input must have positive y-degree");

    const Int& p = K->characteristic();
    if (p != 0 && p <= m)
        fail(Errc::CharTooSmall, "characteristic " + p.get_str() +
                                     " must exceed the y-degree " + std::to_string(m));

    for (long j = 0; j <= m; ++j)
        for (const auto& [i, c] : req.f.ycoeff(j))
            if (i < 0)
                fail(Errc::UsageError, "expansion requires power-series coefficients "
                                       "(no negative x-exponents)");

    // constant terms of the branches: roots of f(0, y)
    std::vector<FieldElement> f0c(static_cast<size_t>(m) + 1);
    for (long j = 0; j <= m; ++j) f0c[static_cast<size_t>(j)] = req.f.coeff(0, j);
    UnivariatePoly f0 = UnivariatePoly::from_coeffs(K, std::move(f0c));

    auto heads = field_roots(f0);
    long found = 0;
    for (const auto& [c, mult] : heads) found += mult;
    if (found != m)
        fail(Errc::RootOutsideField,
             "f(0, y) = " + f0.to_string("y") + " does not split over " + K->describe() +
                 "; rerun over a larger field");

    XYPoly fx = req.f.to_xypoly();
    TailList raw;
    for (const auto& [c0, mult0] : heads) {
        XYPoly Fc = np_substitute(fx, 0, 1, c0);
        PuiseuxSeries head = PuiseuxSeries::monomial(c0, 0, 1);
        long got = 0;
        for (auto& [tail, mt] : expand_rec(Fc, req.truncation, 0)) {
            raw.push_back({head + tail, mt});
            got += mt;
        }
        if (got != mult0)
            fail(Errc::UsageError, "internal: branch multiplicity mismatch during expansion");
    }

    // truncate, merge equal branches, order canonically
    BranchSet bs;
    bs.total_degree = m;
    Trunc T = Trunc::at(req.truncation);
    for (auto& [series, mult] : raw) {
        PuiseuxSeries b = series.truncated(T);
        bool merged = false;
        for (auto& [have, hmult] : bs.branches)
            if (have == b) {
                hmult += mult;
                merged = true;
                break;
            }
        if (!merged) bs.branches.push_back({b, mult});
    }
    std::sort(bs.branches.begin(), bs.branches.end(),
              [](const auto& a, const auto& b) { return series_cmp(a.first, b.first) < 0; });
    return bs;
}

BranchSet conjugate_closure(const PuiseuxSeries& primitive, long m) {
    if (m < 1) fail(Errc::UsageError, "conjugate closure needs a positive degree");
    FieldElement omega = primitive_root_of_unity(primitive.ctx(), Int(m));
    BranchSet bs;
    bs.total_degree = m;
    for (long i = 1; i <= m; ++i) bs.branches.push_back({conjugate(primitive, omega, i), 1});
    std::sort(bs.branches.begin(), bs.branches.end(),
              [](const auto& a, const auto& b) { return series_cmp(a.first, b.first) < 0; });
    return bs;
}

bool verify_product(const BivariatePoly& f, const BranchSet& branches, const Rat& T) {
    const FieldCtx& K = f.ctx();
    long m = f.deg_y();
    long count = 0;
    for (const auto& [series, mult] : branches.branches) count += mult;
    if (count != m) return false;

    // expand prod (y - p_i)^{mult} as y-polynomial coefficients
    std::vector<PuiseuxSeries> acc{PuiseuxSeries::monomial(FieldElement::one(K), 0, 1)};
    for (const auto& [series, mult] : branches.branches)
        for (long k = 0; k < mult; ++k) {
            std::vector<PuiseuxSeries> next(acc.size() + 1, PuiseuxSeries::zero(K));
            for (size_t d = 0; d < acc.size(); ++d) {
                next[d + 1] = next[d + 1] + acc[d];
                next[d] = next[d] - acc[d] * series;
            }
            acc = std::move(next);
        }

    for (long j = 0; j <= m; ++j) {
        std::map<long long, FieldElement> terms(f.ycoeff(j).begin(), f.ycoeff(j).end());
        PuiseuxSeries fj = PuiseuxSeries::from_terms(K, 1, std::move(terms));
        if (!equal_mod(acc[static_cast<size_t>(j)], fj, T)) return false;
    }
    return true;
}

} // namespace compoly
