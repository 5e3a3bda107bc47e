// Composed sums and products of univariate polynomials over finite fields.
//
// Both operations are resultants in an auxiliary variable: with f monic,
// Res_z(f(z), h(x, z)) = prod_{f(a)=0} h(x, a), so h = g(x - z) collects the
// root sums and h = z^{deg g} g(x/z) the root products. The resultants are
// computed over the ring F_q[x] by the generic subresultant engine, which
// keeps everything exact and works in any characteristic.
//
// Decomposition goes the other way: given irreducible f of composite degree
// n = n1 * n2 with gcd(n1, n2) = 1, scan every monic irreducible candidate
// g1 of degree n1 and solve for the cofactor with root arithmetic in one
// fixed copy of F_{q^n}. If t is a fixed root of f and a is a root of g1,
// the partner root b = t - a (or t / a) generates the cofactor as its
// Frobenius orbit product; the orbit length filter plus a final exact
// composed-product comparison make the search an oracle rather than a
// heuristic.

#include "compoly/compose_uni.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "compoly/resultant.hpp"

namespace compoly {

namespace {

void require_inputs(const UnivariatePoly& f, const UnivariatePoly& g, const char* where) {
    if (!f.valid() || !g.valid()) fail(Errc::UsageError, std::string(where) + ": invalid polynomial");
    if (f.ctx()->kind() != FieldKind::Finite)
        fail(Errc::NotFiniteField, std::string(where) + ": coefficients must lie in a finite field");
    if (!f.ctx()->same_field(*g.ctx()))
        fail(Errc::BadFieldMismatch, std::string(where) + ": operands live in different fields");
    if (f.is_constant() || g.is_constant() || !f.is_monic() || !g.is_monic())
        fail(Errc::UsageError, std::string(where) + ": operands must be monic and nonconstant");
}

// Polynomial in the eliminated variable z, coefficients in F_q[x],
// degree-indexed.
using ZPoly = std::vector<UnivariatePoly>;

UnivariatePoly resultant_in_z(const FieldCtx& ctx, ZPoly A, ZPoly B) {
    auto is_zero = [](const UnivariatePoly& a) { return a.is_zero(); };
    auto sub = [](const UnivariatePoly& a, const UnivariatePoly& b) { return a - b; };
    auto mul = [](const UnivariatePoly& a, const UnivariatePoly& b) { return a * b; };
    auto dive = [](const UnivariatePoly& a, const UnivariatePoly& b) {
        UnivariatePoly q, r;
        divrem(a, b, q, r);
        return q;
    };
    ResultantEngine<UnivariatePoly, decltype(is_zero), decltype(sub), decltype(mul), decltype(dive)>
        engine(UnivariatePoly::zero(ctx), UnivariatePoly::one(ctx), is_zero, sub, mul, dive);
    return engine.resultant(std::move(A), std::move(B));
}

ZPoly constant_in_x(const UnivariatePoly& f) {
    ZPoly out;
    out.reserve(static_cast<std::size_t>(f.deg()) + 1);
    for (long i = 0; i <= f.deg(); ++i) out.push_back(UnivariatePoly::constant(f.coeff(i)));
    return out;
}

} // namespace

UnivariatePoly composed_sum_uni(const UnivariatePoly& f, const UnivariatePoly& g) {
    require_inputs(f, g, "composed_sum_uni");
    const FieldCtx& ctx = f.ctx();
    long n = g.deg();
    // g(x - z) as a polynomial in z: the z^t coefficient is
    // (-1)^t sum_{j >= t} g_j C(j, t) x^{j-t}.
    ZPoly B(static_cast<std::size_t>(n) + 1);
    for (long t = 0; t <= n; ++t) {
        std::vector<FieldElement> xc(static_cast<std::size_t>(n - t) + 1, FieldElement::zero(ctx));
        for (long j = t; j <= n; ++j) {
            Int b;
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(t));
            FieldElement term = g.coeff(j) * FieldElement::from_integer(ctx, b);
            if (t & 1) term = -term;
            xc[static_cast<std::size_t>(j - t)] += term;
        }
        B[static_cast<std::size_t>(t)] = UnivariatePoly::from_coeffs(ctx, std::move(xc));
    }
    return resultant_in_z(ctx, constant_in_x(f), std::move(B));
}

UnivariatePoly composed_mul_uni(const UnivariatePoly& f, const UnivariatePoly& g) {
    require_inputs(f, g, "composed_mul_uni");
    if (f.coeff(0).is_zero() || g.coeff(0).is_zero())
        fail(Errc::ZeroRoot, "composed_mul_uni: operands must not vanish at 0");
    const FieldCtx& ctx = f.ctx();
    long n = g.deg();
    // z^n g(x/z) has z^t coefficient g_{n-t} x^{n-t}.
    ZPoly B(static_cast<std::size_t>(n) + 1);
    for (long t = 0; t <= n; ++t)
        B[static_cast<std::size_t>(t)] = UnivariatePoly::monomial(g.coeff(n - t), n - t);
    return resultant_in_z(ctx, constant_in_x(f), std::move(B));
}

UnivariatePoly composed_uni(const UnivariatePoly& f, const UnivariatePoly& g, DiamondKind kind) {
    return kind == DiamondKind::addition ? composed_sum_uni(f, g) : composed_mul_uni(f, g);
}

CriterionReport check_irreducibility_criterion(const UnivariatePoly& f, const UnivariatePoly& g,
                                               DiamondKind kind) {
    CriterionReport rep;
    rep.product = composed_uni(f, g, kind);
    rep.f_irreducible = is_irreducible(f);
    rep.g_irreducible = is_irreducible(g);
    rep.degrees_coprime = std::gcd(f.deg(), g.deg()) == 1;
    rep.product_irreducible = is_irreducible(rep.product);
    rep.holds =
        rep.product_irreducible == (rep.f_irreducible && rep.g_irreducible && rep.degrees_coprime);
    return rep;
}

namespace {

// Inclusion F_q -> F_{q^n} realized concretely: for prime q the coefficients
// embed as integers; otherwise tau is the canonical (least) root of the base
// modulus in the big field and coordinates map through powers of tau.
struct SubfieldEmbedding {
    FieldCtx base;
    FieldCtx ext;
    FieldElement tau;

    SubfieldEmbedding(const FieldCtx& base_ctx, long n) : base(base_ctx) {
        ext = FieldContext::make(build_extension(base->characteristic(), base->ext_degree() * n));
        if (base->ext_degree() > 1) {
            std::vector<FieldElement> mc;
            for (const Int& c : base->modulus()) mc.push_back(FieldElement::from_integer(ext, c));
            UnivariatePoly m = UnivariatePoly::from_coeffs(ext, std::move(mc));
            tau = roots_in_field(m).front().first;
        }
    }

    FieldElement embed(const FieldElement& a) const {
        const std::vector<Int>& co = a.ff_coords();
        if (base->ext_degree() == 1) return FieldElement::from_integer(ext, co[0]);
        FieldElement acc = FieldElement::zero(ext);
        for (std::size_t i = co.size(); i-- > 0;)
            acc = acc * tau + FieldElement::from_integer(ext, co[i]);
        return acc;
    }

    UnivariatePoly embed_poly(const UnivariatePoly& f) const {
        std::vector<FieldElement> cs;
        cs.reserve(f.coeffs().size());
        for (const FieldElement& c : f.coeffs()) cs.push_back(embed(c));
        return UnivariatePoly::from_coeffs(ext, std::move(cs));
    }

    // Inverse of embed on elements known to lie in the embedded copy (the
    // cofactor coefficients are Frobenius-fixed by construction).
    FieldElement unembed(const FieldElement& c) const {
        long e = base->ext_degree();
        const std::vector<Int>& tgt = c.ff_coords();
        if (e == 1) {
            for (std::size_t i = 1; i < tgt.size(); ++i)
                if (tgt[i] != 0)
                    fail(Errc::UsageError, "internal: cofactor coefficient escapes the base field");
            return FieldElement::from_integer(base, tgt[0]);
        }
        // Solve sum_i a_i tau^i = c coordinate-wise over F_p. The tau-power
        // columns are independent, so elimination leaves one pivot per column.
        const Int& p = base->characteristic();
        long rows = ext->ext_degree();
        std::vector<std::vector<Int>> aug(static_cast<std::size_t>(rows),
                                          std::vector<Int>(static_cast<std::size_t>(e) + 1, 0));
        FieldElement pw = FieldElement::one(ext);
        for (long j = 0; j < e; ++j) {
            const std::vector<Int>& co = pw.ff_coords();
            for (long i = 0; i < rows; ++i) aug[i][j] = co[i];
            pw *= tau;
        }
        for (long i = 0; i < rows; ++i) aug[i][e] = tgt[i];
        for (long col = 0; col < e; ++col) {
            long pr = -1;
            for (long i = col; i < rows; ++i)
                if (aug[i][col] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) fail(Errc::UsageError, "internal: degenerate embedding basis");
            std::swap(aug[col], aug[pr]);
            Int inv;
            mpz_invert(inv.get_mpz_t(), aug[col][col].get_mpz_t(), p.get_mpz_t());
            for (long j = col; j <= e; ++j) aug[col][j] = aug[col][j] * inv % p;
            for (long i = 0; i < rows; ++i) {
                if (i == col || aug[i][col] == 0) continue;
                Int s = aug[i][col];
                for (long j = col; j <= e; ++j)
                    aug[i][j] = ((aug[i][j] - s * aug[col][j]) % p + p) % p;
            }
        }
        std::vector<Int> coords;
        coords.reserve(static_cast<std::size_t>(e));
        for (long j = 0; j < e; ++j) coords.push_back(aug[j][e]);
        for (long i = e; i < rows; ++i)
            if (aug[i][e] != 0)
                fail(Errc::UsageError, "internal: cofactor coefficient escapes the base field");
        return FieldElement::finite_coords(base, std::move(coords));
    }

    UnivariatePoly unembed_poly(const UnivariatePoly& f) const {
        std::vector<FieldElement> cs;
        cs.reserve(f.coeffs().size());
        for (const FieldElement& c : f.coeffs()) cs.push_back(unembed(c));
        return UnivariatePoly::from_coeffs(base, std::move(cs));
    }
};

struct Split {
    UnivariatePoly g1, g2;
};

// Every two-factor decomposition of irreducible f under the given law, with
// deg g1 < deg g2, in deterministic scan order (split degree ascending, then
// candidate coefficient tuples in field enumeration order with the constant
// term fastest).
std::vector<Split> find_splits(const UnivariatePoly& f, DiamondKind kind, const Int& budget) {
    const FieldCtx& ctx = f.ctx();
    long n = f.deg();
    std::vector<std::pair<long, long>> shapes;
    for (long n1 = 2; n1 * n1 <= n; ++n1)
        if (n % n1 == 0 && std::gcd(n1, n / n1) == 1) shapes.emplace_back(n1, n / n1);
    if (shapes.empty()) return {};

    const Int& q = ctx->cardinality();
    SubfieldEmbedding emb(ctx, n);
    FieldElement theta = roots_in_field(emb.embed_poly(f)).front().first;

    std::vector<FieldElement> elems = enumerate_field(ctx);
    std::vector<Split> out;
    for (const auto& [n1, n2] : shapes) {
        Int scan;
        mpz_pow_ui(scan.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n1));
        if (scan > budget)
            fail(Errc::SearchBudgetExceeded,
                 "decomposition scan of " + scan.get_str() + " degree-" + std::to_string(n1) +
                     " candidates over " + ctx->describe() + " exceeds the budget");
        std::vector<std::size_t> idx(static_cast<std::size_t>(n1), 0);
        while (true) {
            std::vector<FieldElement> cs;
            cs.reserve(idx.size() + 1);
            for (std::size_t i : idx) cs.push_back(elems[i]);
            cs.push_back(FieldElement::one(ctx));
            UnivariatePoly g1 = UnivariatePoly::from_coeffs(ctx, std::move(cs));
            if (is_irreducible(g1)) {
                for (const auto& root : roots_in_field(emb.embed_poly(g1))) {
                    const FieldElement& alpha = root.first;
                    FieldElement beta =
                        kind == DiamondKind::multiplication ? theta / alpha : theta - alpha;
                    std::vector<FieldElement> orbit{beta};
                    for (FieldElement cur = frobenius(beta, q); cur != beta;
                         cur = frobenius(cur, q)) {
                        orbit.push_back(cur);
                        if (static_cast<long>(orbit.size()) > n2) break;
                    }
                    if (static_cast<long>(orbit.size()) != n2) continue;
                    UnivariatePoly g2K = UnivariatePoly::one(emb.ext);
                    for (const FieldElement& b : orbit) g2K *= UnivariatePoly::linear_root(b);
                    UnivariatePoly g2 = emb.unembed_poly(g2K);
                    // Guaranteed once the orbit length matches; kept as an
                    // exact cross-check of the embedding arithmetic.
                    if (composed_uni(g1, g2, kind) != f) continue;
                    bool seen = false;
                    for (const Split& s : out)
                        if (s.g1 == g1 && s.g2 == g2) {
                            seen = true;
                            break;
                        }
                    if (!seen) out.push_back({g1, g2});
                }
            }
            std::size_t pos = 0;
            while (pos < idx.size()) {
                if (++idx[pos] < elems.size()) break;
                idx[pos] = 0;
                ++pos;
            }
            if (pos == idx.size()) break;
        }
    }
    return out;
}

std::vector<UnivariatePoly> decompose_rec(const UnivariatePoly& f, DiamondKind kind,
                                          const Int& budget) {
    std::vector<Split> splits = find_splits(f, kind, budget);
    if (splits.empty()) return {f};
    std::vector<UnivariatePoly> acc = decompose_rec(splits.front().g1, kind, budget);
    std::vector<UnivariatePoly> rhs = decompose_rec(splits.front().g2, kind, budget);
    acc.insert(acc.end(), rhs.begin(), rhs.end());
    return acc;
}

} // namespace

DecompositionResult decompose_uni(const UnivariatePoly& f, DiamondKind kind, const Int& budget) {
    require_inputs(f, f, "decompose_uni");
    if (!is_irreducible(f))
        fail(Errc::UsageError, "decompose_uni expects an irreducible polynomial");
    if (kind == DiamondKind::multiplication && f.coeff(0).is_zero())
        fail(Errc::ZeroRoot, "decompose_uni: polynomial vanishes at 0");

    DecompositionResult res;
    std::vector<Split> splits = find_splits(f, kind, budget);
    if (splits.empty()) {
        res.factors = {f};
        return res;
    }

    auto by_degree = [](const UnivariatePoly& a, const UnivariatePoly& b) {
        return a.deg() < b.deg();
    };
    auto full_factors = [&](const Split& s) {
        std::vector<UnivariatePoly> v = decompose_rec(s.g1, kind, budget);
        std::vector<UnivariatePoly> w = decompose_rec(s.g2, kind, budget);
        v.insert(v.end(), w.begin(), w.end());
        std::sort(v.begin(), v.end(), by_degree);
        return v;
    };
    res.factors = full_factors(splits.front());

    const FieldCtx& ctx = f.ctx();
    std::vector<FieldElement> units_pool;
    for (const FieldElement& u : enumerate_field(ctx))
        if (kind == DiamondKind::addition || !u.is_zero()) units_pool.push_back(u);

    std::vector<std::vector<UnivariatePoly>> distinct{res.factors};
    for (std::size_t si = 1; si < splits.size(); ++si) {
        std::vector<UnivariatePoly> alt = full_factors(splits[si]);
        if (std::find(distinct.begin(), distinct.end(), alt) != distinct.end()) continue;
        distinct.push_back(alt);

        DecompositionResult::Alternate a;
        a.factors = alt;
        // Relating units are only unique up to each factor's stabilizer, so
        // collect every valid unit per factor and pick one per factor jointly
        // such that the combination is the identity of the law.
        std::vector<std::vector<FieldElement>> choices;
        for (const UnivariatePoly& base : res.factors) {
            std::size_t j = 0;
            while (j < alt.size() && alt[j].deg() != base.deg()) ++j;
            if (j == alt.size())
                fail(Errc::UsageError, "internal: alternate decomposition has mismatched degrees");
            a.permutation.push_back(j);
            std::vector<FieldElement> valid;
            for (const FieldElement& c : units_pool)
                if (composed_uni(UnivariatePoly::linear_root(c), base, kind) == alt[j])
                    valid.push_back(c);
            if (valid.empty())
                fail(Errc::UsageError,
                     "internal: alternate decomposition is not associate to the primary one");
            choices.push_back(std::move(valid));
        }
        std::size_t t = choices.size();
        std::vector<std::size_t> pick(t - 1, 0);
        bool done = false;
        while (!done) {
            FieldElement acc = kind == DiamondKind::multiplication ? FieldElement::one(ctx)
                                                                   : FieldElement::zero(ctx);
            for (std::size_t i = 0; i + 1 < t; ++i)
                acc = kind == DiamondKind::multiplication ? acc * choices[i][pick[i]]
                                                          : acc + choices[i][pick[i]];
            FieldElement need =
                kind == DiamondKind::multiplication ? acc.inverse() : -acc;
            for (const FieldElement& c : choices.back())
                if (c == need) {
                    for (std::size_t i = 0; i + 1 < t; ++i) a.units.push_back(choices[i][pick[i]]);
                    a.units.push_back(need);
                    done = true;
                    break;
                }
            if (done) break;
            std::size_t pos = 0;
            while (pos + 1 < t) {
                if (++pick[pos] < choices[pos].size()) break;
                pick[pos] = 0;
                ++pos;
            }
            if (pos + 1 >= t)
                fail(Errc::UsageError,
                     "internal: decomposition units do not combine to the identity");
        }
        res.alternates.push_back(std::move(a));
    }
    return res;
}

} // namespace compoly
