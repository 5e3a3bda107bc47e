#include "compoly/field.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace compoly {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) fail(Errc::ZeroElement, "zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

// --- dense polynomial scratch arithmetic -----------------------------------
//
// Low-degree-first coefficient vectors over Int (for cyclotomic polynomials),
// Rat (for arithmetic modulo Phi_N), and Int-mod-p (for finite fields). These
// stay private to this translation unit; the public polynomial types build on
// FieldElement instead.

namespace {

using ZPoly = std::vector<Int>;
using QPoly = std::vector<Rat>;
using FPoly = std::vector<Int>;

template <class T>
void trim(std::vector<T>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

ZPoly zpoly_divexact(const ZPoly& num, const ZPoly& den) {
    // den is monic; exact division (used only where divisibility is known).
    ZPoly rem = num;
    ZPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    while (rem.size() >= den.size()) {
        Int c = rem.back();
        size_t shift = rem.size() - den.size();
        quot[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) rem[shift + i] -= c * den[i];
        trim(rem);
    }
    if (!rem.empty()) throw std::logic_error("inexact cyclotomic division");
    return quot;
}

// Phi_N with integer coefficients via Phi_N = (x^N - 1) / prod_{d|N, d<N} Phi_d.
ZPoly cyclotomic_poly(long n) {
    std::map<long, ZPoly> memo;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        ZPoly poly(d + 1, Int(0));
        poly[0] = -1;
        poly[d] = 1; // x^d - 1
        for (auto& [d2, phi] : memo)
            if (d % d2 == 0) poly = zpoly_divexact(poly, phi);
        memo[d] = std::move(poly);
    }
    return memo[n];
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

// Remainder of a modulo the monic polynomial m.
QPoly qpoly_rem(QPoly a, const QPoly& m) {
    trim(a);
    while (a.size() >= m.size()) {
        Rat c = a.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) a[shift + i] -= c * m[i];
        trim(a);
    }
    return a;
}

void qpoly_divrem(QPoly a, const QPoly& b, QPoly& quot, QPoly& rem) {
    trim(a);
    quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    const Rat& lead = b.back();
    while (a.size() >= b.size()) {
        Rat c = a.back() / lead;
        size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    trim(quot);
    rem = std::move(a);
}

// Inverse of a modulo the monic irreducible m (a nonzero mod m).
QPoly qpoly_invmod(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = a, t0, t1{Rat(1)};
    trim(r1);
    while (r1.size() > 1) {
        QPoly q, r;
        qpoly_divrem(r0, r1, q, r);
        QPoly tn = t0;
        QPoly qt = qpoly_mul(q, t1);
        tn.resize(std::max(tn.size(), qt.size()), Rat(0));
        for (size_t i = 0; i < qt.size(); ++i) tn[i] -= qt[i];
        trim(tn);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(tn);
    }
    if (r1.empty()) throw std::logic_error("non-invertible cyclotomic element");
    Rat inv_lead = Rat(1) / r1[0];
    for (auto& c : t1) c *= inv_lead;
    return qpoly_rem(std::move(t1), m);
}

Int mod_nonneg(const Int& a, const Int& p) {
    Int r = a % p;
    if (r < 0) r += p;
    return r;
}

void fnorm(FPoly& v, const Int& p) {
    for (auto& c : v) c = mod_nonneg(c, p);
    trim(v);
}

FPoly fpoly_mul(const FPoly& a, const FPoly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    FPoly out(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    trim(out);
    return out;
}

Int inv_mod_p(const Int& a, const Int& p) {
    Int out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(Errc::ZeroElement, "division by zero in F_p");
    return out;
}

void fpoly_divrem(FPoly a, const FPoly& b, const Int& p, FPoly& quot, FPoly& rem) {
    trim(a);
    quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
    Int lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        Int c = (a.back() * lead_inv) % p;
        size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = mod_nonneg(a[shift + i] - c * b[i], p);
        trim(a);
    }
    trim(quot);
    rem = std::move(a);
}

FPoly fpoly_rem(FPoly a, const FPoly& m, const Int& p) {
    FPoly q, r;
    fpoly_divrem(std::move(a), m, p, q, r);
    return r;
}

FPoly fpoly_gcd(FPoly a, FPoly b, const Int& p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        FPoly r = fpoly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        Int inv = inv_mod_p(a.back(), p);
        for (auto& c : a) c = (c * inv) % p;
    }
    return a;
}

// x^e mod m over F_p, e an arbitrary nonnegative Int.
FPoly fpoly_xpow_mod(const Int& e, const FPoly& m, const Int& p) {
    FPoly result{Int(1)};
    FPoly base{Int(0), Int(1)};
    base = fpoly_rem(base, m, p);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = fpoly_rem(fpoly_mul(result, base, p), m, p);
        base = fpoly_rem(fpoly_mul(base, base, p), m, p);
        k >>= 1;
    }
    return result;
}

std::vector<long> prime_factors_of(long n) {
    std::vector<long> out;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// Irreducibility of a monic degree-e polynomial over F_p:
// x^{p^e} == x mod m, and gcd(x^{p^{e/l}} - x, m) = 1 for every prime l | e.
bool fpoly_is_irreducible(const FPoly& m, const Int& p) {
    long e = static_cast<long>(m.size()) - 1;
    if (e <= 0) return false;
    if (e == 1) return true;
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    FPoly diff = fpoly_xpow_mod(pe, m, p); // x^{p^e} - x must vanish mod m
    if (diff.size() < 2) diff.resize(2, Int(0));
    diff[1] = mod_nonneg(diff[1] - 1, p);
    trim(diff);
    if (!diff.empty()) return false;
    for (long l : prime_factors_of(e)) {
        Int pd;
        mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e / l));
        FPoly xd = fpoly_xpow_mod(pd, m, p);
        xd.resize(std::max<size_t>(xd.size(), 2), Int(0));
        xd[1] = mod_nonneg(xd[1] - 1, p);
        trim(xd);
        FPoly g = fpoly_gcd(m, xd, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Lexicographically least monic irreducible of degree e over F_p, ordering
// coefficient tuples (c_{e-1}, ..., c_0) with digits increasing 0..p-1.
FPoly least_irreducible(const Int& p, long e) {
    std::vector<Int> digits(e, Int(0)); // digits[0] = c_{e-1}, ..., digits[e-1] = c_0
    long guard = 0;
    while (true) {
        if (++guard > 20'000'000) fail(Errc::SearchBudgetExceeded, "modulus search exhausted");
        FPoly m(e + 1, Int(0));
        m[e] = 1;
        for (long i = 0; i < e; ++i) m[e - 1 - i] = digits[i];
        if (fpoly_is_irreducible(m, p)) return m;
        long pos = e - 1;
        while (pos >= 0) {
            digits[pos] += 1;
            if (digits[pos] < p) break;
            digits[pos] = 0;
            --pos;
        }
        if (pos < 0) fail(Errc::NoSuchRoot, "no irreducible modulus found");
    }
}

} // namespace

// --- FieldConfig ------------------------------------------------------------

FieldConfig FieldConfig::rational() { return FieldConfig{}; }

FieldConfig FieldConfig::cyclotomic(long n) {
    FieldConfig c;
    c.kind = FieldKind::Cyclotomic;
    c.order = n;
    return c;
}

FieldConfig FieldConfig::finite(const Int& p, long e) {
    FieldConfig c;
    c.kind = FieldKind::Finite;
    c.p = p;
    c.ext = e;
    return c;
}

std::string FieldConfig::to_string() const {
    switch (kind) {
        case FieldKind::Rational: return "rational";
        case FieldKind::Cyclotomic: return "cyclo:" + std::to_string(order);
        case FieldKind::Finite: {
            std::string s = "finite:" + p.get_str();
            if (ext > 1) s += ":" + std::to_string(ext);
            return s;
        }
    }
    return "?";
}

// --- FieldContext -----------------------------------------------------------

FieldCtx FieldContext::make(const FieldConfig& cfg) {
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->cfg_ = cfg;
    switch (cfg.kind) {
        case FieldKind::Rational:
            break;
        case FieldKind::Cyclotomic: {
            if (cfg.order < 1) fail(Errc::UsageError, "cyclotomic order must be >= 1");
            if (cfg.order > 100000) fail(Errc::UsageError, "cyclotomic order too large");
            ZPoly phi = cyclotomic_poly(cfg.order);
            ctx->phi_ = static_cast<long>(phi.size()) - 1;
            ctx->cyclo_.assign(phi.begin(), phi.end());
            ctx->torsion_ = (cfg.order % 2 == 0) ? cfg.order : 2 * cfg.order;
            break;
        }
        case FieldKind::Finite: {
            if (cfg.p < 2 || mpz_probab_prime_p(cfg.p.get_mpz_t(), 40) == 0)
                fail(Errc::UsageError, "finite field characteristic must be prime");
            if (cfg.ext < 1) fail(Errc::UsageError, "extension degree must be >= 1");
            ctx->char_ = cfg.p;
            mpz_pow_ui(ctx->card_.get_mpz_t(), cfg.p.get_mpz_t(),
                       static_cast<unsigned long>(cfg.ext));
            if (ctx->cfg_.modulus.empty()) {
                ctx->cfg_.modulus = least_irreducible(cfg.p, cfg.ext);
            } else {
                FPoly m = ctx->cfg_.modulus;
                fnorm(m, cfg.p);
                if (static_cast<long>(m.size()) != cfg.ext + 1 || m.back() != 1 ||
                    !fpoly_is_irreducible(m, cfg.p))
                    fail(Errc::UsageError, "field modulus must be monic irreducible of the stated degree");
                ctx->cfg_.modulus = std::move(m);
            }
            break;
        }
    }
    return ctx;
}

bool FieldContext::same_field(const FieldContext& other) const {
    if (cfg_.kind != other.cfg_.kind) return false;
    switch (cfg_.kind) {
        case FieldKind::Rational: return true;
        case FieldKind::Cyclotomic: return cfg_.order == other.cfg_.order;
        case FieldKind::Finite:
            return cfg_.p == other.cfg_.p && cfg_.ext == other.cfg_.ext &&
                   cfg_.modulus == other.cfg_.modulus;
    }
    return false;
}

void require_same_field(const FieldElement& a, const FieldElement& b, const char* where) {
    if (!a.valid() || !b.valid()) fail(Errc::BadFieldMismatch, std::string(where) + ": uninitialized element");
    if (a.ctx_ == b.ctx_) return;
    if (!a.ctx_->same_field(*b.ctx_))
        fail(Errc::BadFieldMismatch, std::string(where) + ": operands live in different fields (" +
                                         a.ctx_->describe() + " vs " + b.ctx_->describe() + ")");
}

// --- FieldElement -----------------------------------------------------------

FieldElement FieldElement::zero(const FieldCtx& ctx) { return from_integer(ctx, 0); }

FieldElement FieldElement::one(const FieldCtx& ctx) { return from_integer(ctx, 1); }

FieldElement FieldElement::from_integer(const FieldCtx& ctx, const Int& n) {
    return from_rational(ctx, Rat(n));
}

FieldElement FieldElement::from_rational(const FieldCtx& ctx, const Rat& r) {
    FieldElement e;
    e.ctx_ = ctx;
    switch (ctx->kind()) {
        case FieldKind::Rational:
            e.v_ = r;
            break;
        case FieldKind::Cyclotomic: {
            std::vector<Rat> coords(ctx->degree(), Rat(0));
            coords[0] = r;
            e.v_ = std::move(coords);
            break;
        }
        case FieldKind::Finite: {
            const Int& p = ctx->characteristic();
            Int den = mod_nonneg(r.get_den(), p);
            if (den == 0)
                fail(Errc::CharDividesDenominator,
                     "rational " + rat_to_string(r) + " has no image in characteristic " + p.get_str());
            Int val = (mod_nonneg(r.get_num(), p) * inv_mod_p(den, p)) % p;
            std::vector<Int> coords(ctx->ext_degree(), Int(0));
            coords[0] = val;
            e.v_ = std::move(coords);
            break;
        }
    }
    return e;
}

FieldElement FieldElement::cyclotomic_coords(const FieldCtx& ctx, std::vector<Rat> coords) {
    if (ctx->kind() != FieldKind::Cyclotomic)
        fail(Errc::BadFieldMismatch, "cyclotomic coordinates in a non-cyclotomic field");
    coords.resize(ctx->degree(), Rat(0));
    FieldElement e;
    e.ctx_ = ctx;
    e.v_ = std::move(coords);
    return e;
}

FieldElement FieldElement::finite_coords(const FieldCtx& ctx, std::vector<Int> coords) {
    if (ctx->kind() != FieldKind::Finite)
        fail(Errc::BadFieldMismatch, "finite-field coordinates in an infinite field");
    coords.resize(ctx->ext_degree(), Int(0));
    for (auto& c : coords) c = mod_nonneg(c, ctx->characteristic());
    FieldElement e;
    e.ctx_ = ctx;
    e.v_ = std::move(coords);
    return e;
}

bool FieldElement::is_zero() const {
    switch (kind()) {
        case FieldKind::Rational: return std::get<Rat>(v_) == 0;
        case FieldKind::Cyclotomic: {
            for (const auto& c : std::get<std::vector<Rat>>(v_))
                if (c != 0) return false;
            return true;
        }
        case FieldKind::Finite: {
            for (const auto& c : std::get<std::vector<Int>>(v_))
                if (c != 0) return false;
            return true;
        }
    }
    return false;
}

bool FieldElement::is_one() const { return *this == one(ctx_); }

bool FieldElement::is_rational() const {
    switch (kind()) {
        case FieldKind::Rational: return true;
        case FieldKind::Cyclotomic: {
            const auto& v = std::get<std::vector<Rat>>(v_);
            for (size_t i = 1; i < v.size(); ++i)
                if (v[i] != 0) return false;
            return true;
        }
        case FieldKind::Finite: return ctx_->ext_degree() == 1 ||
                                       [&] {
                                           const auto& v = std::get<std::vector<Int>>(v_);
                                           for (size_t i = 1; i < v.size(); ++i)
                                               if (v[i] != 0) return false;
                                           return true;
                                       }();
    }
    return false;
}

Rat FieldElement::rational_value() const {
    switch (kind()) {
        case FieldKind::Rational: return std::get<Rat>(v_);
        case FieldKind::Cyclotomic:
            if (!is_rational()) fail(Errc::BadFieldMismatch, "element is not rational");
            return std::get<std::vector<Rat>>(v_)[0];
        case FieldKind::Finite:
            if (!is_rational()) fail(Errc::BadFieldMismatch, "element is not in the prime field");
            return Rat(std::get<std::vector<Int>>(v_)[0]);
    }
    return Rat(0);
}

const std::vector<Rat>& FieldElement::coords() const { return std::get<std::vector<Rat>>(v_); }

const std::vector<Int>& FieldElement::ff_coords() const { return std::get<std::vector<Int>>(v_); }

FieldElement FieldElement::operator-() const {
    FieldElement out = *this;
    switch (kind()) {
        case FieldKind::Rational:
            std::get<Rat>(out.v_) = -std::get<Rat>(out.v_);
            break;
        case FieldKind::Cyclotomic:
            for (auto& c : std::get<std::vector<Rat>>(out.v_)) c = -c;
            break;
        case FieldKind::Finite: {
            const Int& p = ctx_->characteristic();
            for (auto& c : std::get<std::vector<Int>>(out.v_)) c = mod_nonneg(-c, p);
            break;
        }
    }
    return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    require_same_field(*this, o, "+");
    switch (kind()) {
        case FieldKind::Rational:
            std::get<Rat>(v_) += std::get<Rat>(o.v_);
            break;
        case FieldKind::Cyclotomic: {
            auto& a = std::get<std::vector<Rat>>(v_);
            const auto& b = std::get<std::vector<Rat>>(o.v_);
            for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            break;
        }
        case FieldKind::Finite: {
            auto& a = std::get<std::vector<Int>>(v_);
            const auto& b = std::get<std::vector<Int>>(o.v_);
            const Int& p = ctx_->characteristic();
            for (size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + b[i]) % p;
            break;
        }
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    require_same_field(*this, o, "*");
    switch (kind()) {
        case FieldKind::Rational:
            std::get<Rat>(v_) *= std::get<Rat>(o.v_);
            break;
        case FieldKind::Cyclotomic: {
            const auto& a = std::get<std::vector<Rat>>(v_);
            const auto& b = std::get<std::vector<Rat>>(o.v_);
            QPoly prod = qpoly_mul(a, b);
            prod = qpoly_rem(std::move(prod), ctx_->minimal_poly());
            prod.resize(ctx_->degree(), Rat(0));
            v_ = std::move(prod);
            break;
        }
        case FieldKind::Finite: {
            const auto& a = std::get<std::vector<Int>>(v_);
            const auto& b = std::get<std::vector<Int>>(o.v_);
            const Int& p = ctx_->characteristic();
            FPoly prod = fpoly_mul(a, b, p);
            prod = fpoly_rem(std::move(prod), ctx_->modulus(), p);
            prod.resize(ctx_->ext_degree(), Int(0));
            v_ = std::move(prod);
            break;
        }
    }
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(Errc::ZeroElement, "inverse of zero");
    FieldElement out = *this;
    switch (kind()) {
        case FieldKind::Rational:
            std::get<Rat>(out.v_) = Rat(1) / std::get<Rat>(v_);
            break;
        case FieldKind::Cyclotomic: {
            QPoly a = std::get<std::vector<Rat>>(v_);
            trim(a);
            QPoly inv = qpoly_invmod(a, ctx_->minimal_poly());
            inv.resize(ctx_->degree(), Rat(0));
            out.v_ = std::move(inv);
            break;
        }
        case FieldKind::Finite: {
            // Extended Euclid in F_p[t] against the field modulus.
            const Int& p = ctx_->characteristic();
            FPoly r0 = ctx_->modulus(), r1 = std::get<std::vector<Int>>(v_);
            trim(r1);
            FPoly t0, t1{Int(1)};
            while (r1.size() > 1) {
                FPoly q, r;
                fpoly_divrem(r0, r1, p, q, r);
                FPoly qt = fpoly_mul(q, t1, p);
                FPoly tn = t0;
                tn.resize(std::max(tn.size(), qt.size()), Int(0));
                for (size_t i = 0; i < qt.size(); ++i) tn[i] = mod_nonneg(tn[i] - qt[i], p);
                trim(tn);
                r0 = std::move(r1);
                r1 = std::move(r);
                t0 = std::move(t1);
                t1 = std::move(tn);
            }
            if (r1.empty()) throw std::logic_error("non-invertible finite-field element");
            Int s = inv_mod_p(r1[0], p);
            for (auto& c : t1) c = (c * s) % p;
            t1 = fpoly_rem(std::move(t1), ctx_->modulus(), p);
            t1.resize(ctx_->ext_degree(), Int(0));
            out.v_ = std::move(t1);
            break;
        }
    }
    return out;
}

FieldElement FieldElement::pow(const Int& k) const {
    if (k < 0) return inverse().pow(-k);
    FieldElement result = one(ctx_);
    FieldElement base = *this;
    Int e = k;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
    require_same_field(*this, o, "==");
    return v_ == o.v_;
}

int FieldElement::cmp(const FieldElement& o) const {
    require_same_field(*this, o, "cmp");
    switch (kind()) {
        case FieldKind::Rational:
            return mpq_cmp(std::get<Rat>(v_).get_mpq_t(), std::get<Rat>(o.v_).get_mpq_t());
        case FieldKind::Cyclotomic: {
            const auto& a = std::get<std::vector<Rat>>(v_);
            const auto& b = std::get<std::vector<Rat>>(o.v_);
            for (size_t i = 0; i < a.size(); ++i) {
                int c = mpq_cmp(a[i].get_mpq_t(), b[i].get_mpq_t());
                if (c != 0) return c;
            }
            return 0;
        }
        case FieldKind::Finite: {
            const auto& a = std::get<std::vector<Int>>(v_);
            const auto& b = std::get<std::vector<Int>>(o.v_);
            for (size_t i = 0; i < a.size(); ++i) {
                int c = ::cmp(a[i], b[i]);
                if (c != 0) return c;
            }
            return 0;
        }
    }
    return 0;
}

namespace {

// Shared rendering for coordinate vectors against a named generator.
template <class Coeff>
std::string render_combination(const std::vector<Coeff>& coords, const std::string& var,
                               bool coeffs_signed) {
    std::ostringstream out;
    bool first = true;
    for (long k = static_cast<long>(coords.size()) - 1; k >= 0; --k) {
        const Coeff& c = coords[k];
        if (c == 0) continue;
        Coeff a = c;
        bool neg = coeffs_signed && a < 0;
        if (neg) a = -a;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        std::ostringstream piece;
        if (k == 0) {
            piece << a;
        } else {
            if (!(a == 1)) piece << a << "*";
            piece << var;
            if (k > 1) piece << "^" << k;
        }
        out << piece.str();
    }
    if (first) return "0";
    return out.str();
}

} // namespace

std::string FieldElement::to_string() const {
    switch (kind()) {
        case FieldKind::Rational:
            return rat_to_string(std::get<Rat>(v_));
        case FieldKind::Cyclotomic:
            return render_combination(std::get<std::vector<Rat>>(v_), "w", true);
        case FieldKind::Finite: {
            const auto& v = std::get<std::vector<Int>>(v_);
            if (ctx_->ext_degree() == 1) return v[0].get_str();
            return render_combination(v, "t", false);
        }
    }
    return "?";
}

// --- element-level free functions -------------------------------------------

FieldElement cyclotomic_generator_power(const FieldCtx& ctx, long k) {
    if (ctx->kind() != FieldKind::Cyclotomic)
        fail(Errc::BadFieldMismatch, "generator power requires a cyclotomic field");
    long n = ctx->order();
    k %= n;
    if (k < 0) k += n;
    // x^k mod Phi_N
    QPoly mono(k + 1, Rat(0));
    mono[k] = 1;
    QPoly red = qpoly_rem(std::move(mono), ctx->minimal_poly());
    red.resize(ctx->degree(), Rat(0));
    return FieldElement::cyclotomic_coords(ctx, std::move(red));
}

FieldElement finite_generator(const FieldCtx& ctx) {
    if (ctx->kind() != FieldKind::Finite || ctx->ext_degree() < 2)
        fail(Errc::UsageError, "field generator requires an extension of degree >= 2");
    std::vector<Int> coords(ctx->ext_degree(), Int(0));
    coords[1] = 1;
    return FieldElement::finite_coords(ctx, std::move(coords));
}

namespace {

// Generator of the full group of roots of unity in Q(zeta_N): zeta itself for
// even N, -zeta^{(N+1)/2} (of order 2N) for odd N.
FieldElement torsion_generator(const FieldCtx& ctx) {
    long n = ctx->order();
    if (n % 2 == 0) return cyclotomic_generator_power(ctx, 1);
    return -cyclotomic_generator_power(ctx, (n + 1) / 2);
}

} // namespace

std::vector<FieldElement> all_roots_of_unity(const FieldCtx& ctx) {
    if (ctx->kind() == FieldKind::Rational)
        return {FieldElement::one(ctx), -FieldElement::one(ctx)};
    if (ctx->kind() != FieldKind::Cyclotomic)
        fail(Errc::BadFieldMismatch, "root-of-unity enumeration requires characteristic zero");
    std::vector<FieldElement> out;
    out.reserve(ctx->torsion_order());
    FieldElement eta = torsion_generator(ctx);
    FieldElement cur = FieldElement::one(ctx);
    for (long j = 0; j < ctx->torsion_order(); ++j) {
        out.push_back(cur);
        cur *= eta;
    }
    return out;
}

std::vector<FieldElement> enumerate_field(const FieldCtx& ctx) {
    if (ctx->kind() != FieldKind::Finite)
        fail(Errc::NotFiniteField, "cannot enumerate an infinite field");
    if (ctx->cardinality() > 1'000'000)
        fail(Errc::SearchBudgetExceeded, "field too large to enumerate");
    long e = ctx->ext_degree();
    const Int& p = ctx->characteristic();
    std::vector<FieldElement> out;
    std::vector<Int> coords(e, Int(0));
    // Odometer with the last coordinate fastest, so the sequence is ascending
    // in the same lexicographic order FieldElement::cmp uses.
    while (true) {
        out.push_back(FieldElement::finite_coords(ctx, coords));
        long pos = e - 1;
        while (pos >= 0) {
            coords[pos] += 1;
            if (coords[pos] < p) break;
            coords[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

namespace {

// Exact multiplicative order of a unit z, given a bound m with z^m = 1:
// divide out prime factors of m while the power stays 1.
bool has_exact_order(const FieldElement& z, const Int& m) {
    if (!z.pow(m).is_one()) return false;
    // factor m by trial division (orders in play are small)
    Int rest = m;
    std::vector<Int> primes;
    for (Int q = 2; q * q <= rest; ++q)
        if (rest % q == 0) {
            primes.push_back(q);
            while (rest % q == 0) rest /= q;
        }
    if (rest > 1) primes.push_back(rest);
    for (const Int& q : primes)
        if (z.pow(m / q).is_one()) return false;
    return true;
}

} // namespace

FieldElement primitive_root_of_unity(const FieldCtx& ctx, const Int& m) {
    if (m < 1) fail(Errc::UsageError, "root order must be positive");
    switch (ctx->kind()) {
        case FieldKind::Rational:
            if (m == 1) return FieldElement::one(ctx);
            if (m == 2) return -FieldElement::one(ctx);
            fail(Errc::NoSuchRoot, "Q contains only 1 and -1 as roots of unity");
        case FieldKind::Cyclotomic: {
            Int n(ctx->order());
            if (n % m == 0) {
                Int k = n / m;
                return cyclotomic_generator_power(ctx, k.get_si());
            }
            Int torsion(ctx->torsion_order());
            if (torsion % m == 0) {
                Int j = torsion / m;
                return torsion_generator(ctx).pow(j);
            }
            fail(Errc::NoSuchRoot,
                 "no primitive root of order " + m.get_str() + " in " + ctx->describe());
        }
        case FieldKind::Finite: {
            Int units = ctx->cardinality() - 1;
            if (units % m != 0)
                fail(Errc::NoSuchRoot,
                     "no primitive root of order " + m.get_str() + " in " + ctx->describe());
            Int exp = units / m;
            for (const FieldElement& y : enumerate_field(ctx)) {
                if (y.is_zero()) continue;
                FieldElement z = y.pow(exp);
                if (has_exact_order(z, m)) return z;
            }
            fail(Errc::NoSuchRoot, "exhausted field without finding a primitive root");
        }
    }
    fail(Errc::NoSuchRoot, "unreachable");
}

namespace {

// Positive rational n-th root, if one exists in Q.
std::optional<Rat> positive_rational_root(const Rat& r, unsigned long n) {
    if (r <= 0) return std::nullopt;
    Int num_root, den_root;
    if (mpz_root(num_root.get_mpz_t(), r.get_num().get_mpz_t(), n) == 0) return std::nullopt;
    if (mpz_root(den_root.get_mpz_t(), r.get_den().get_mpz_t(), n) == 0) return std::nullopt;
    return make_rat(num_root, den_root);
}

FieldElement nth_root_rational(const FieldElement& a, const Int& n) {
    Rat r = a.rational_value();
    bool neg = r < 0;
    if (neg && mpz_even_p(n.get_mpz_t()))
        fail(Errc::NoSuchRoot, "negative rational has no even-order root in Q");
    if (!n.fits_ulong_p()) fail(Errc::NoSuchRoot, "root order too large");
    auto root = positive_rational_root(neg ? Rat(-r) : r, n.get_ui());
    if (!root) fail(Errc::NoSuchRoot, rat_to_string(r) + " has no exact root of order " + n.get_str());
    return FieldElement::from_rational(a.ctx(), neg ? Rat(-*root) : *root);
}

FieldElement nth_root_cyclotomic(const FieldElement& a, const Int& n) {
    const FieldCtx& ctx = a.ctx();
    long N = ctx->order();
    long M = ctx->torsion_order();

    // Rule 1: a = zeta^k with n | k picks zeta^{k/n}.
    if (n.fits_slong_p()) {
        long nl = n.get_si();
        FieldElement cur = FieldElement::one(ctx);
        FieldElement zeta = cyclotomic_generator_power(ctx, 1);
        for (long k = 0; k < N; ++k) {
            if (cur == a && nl <= k && k % nl == 0)
                return cyclotomic_generator_power(ctx, k / nl);
            if (cur == a && k == 0) return a; // a = 1 -> root 1
            cur *= zeta;
        }
    }

    // Decompose a = r * eta^j with r a positive rational (unique when it exists).
    FieldElement eta = torsion_generator(ctx);
    FieldElement eta_inv = eta.inverse();
    FieldElement cur = a;
    long j_found = -1;
    Rat r_found;
    for (long j = 0; j < M; ++j) {
        if (cur.is_rational()) {
            Rat r = cur.rational_value();
            if (r > 0) {
                j_found = j;
                r_found = r;
                break;
            }
        }
        cur *= eta_inv;
    }
    if (j_found < 0)
        fail(Errc::NoSuchRoot,
             "root extraction implemented for rational multiples of roots of unity only; " +
                 a.to_string() + " is outside that class");

    if (!n.fits_ulong_p()) fail(Errc::NoSuchRoot, "root order too large");
    auto rho = positive_rational_root(r_found, n.get_ui());
    if (!rho)
        fail(Errc::NoSuchRoot, "radial part " + rat_to_string(r_found) +
                                   " has no rational root of order " + n.get_str());

    // Solve eta^{n i} = eta^{j}: n*i == j (mod M).
    long n_mod = static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(M)));
    long g = std::gcd(n_mod == 0 ? M : n_mod, M);
    if (j_found % g != 0)
        fail(Errc::NoSuchRoot, "no torsion component solves the root equation");
    std::vector<FieldElement> candidates;
    FieldElement radial = FieldElement::from_rational(ctx, *rho);
    for (long i = 0; i < M; ++i) {
        if ((static_cast<long long>(n_mod) * i - j_found) % M == 0)
            candidates.push_back(radial * eta.pow(i));
    }
    if (candidates.empty()) fail(Errc::NoSuchRoot, "no torsion component solves the root equation");
    return *std::min_element(candidates.begin(), candidates.end(),
                             [](const FieldElement& x, const FieldElement& y) { return x < y; });
}

FieldElement nth_root_finite(const FieldElement& a, const Int& n) {
    const FieldCtx& ctx = a.ctx();
    Int units = ctx->cardinality() - 1;
    Int n_eff = n % units;
    if (n_eff == 0) {
        // z^n = z^0 = 1 for every unit z.
        if (!a.is_one()) fail(Errc::NoSuchRoot, "only 1 admits a root of this order here");
        std::vector<FieldElement> all = enumerate_field(ctx);
        for (const FieldElement& z : all)
            if (!z.is_zero()) return z;
    }
    // Roots exist iff a^{(q-1)/gcd(n, q-1)} = 1; find them by direct scan.
    Int g = gcd(n_eff, units);
    if (!a.pow(units / g).is_one())
        fail(Errc::NoSuchRoot,
             a.to_string() + " has no root of order " + n.get_str() + " in " + ctx->describe());
    for (const FieldElement& z : enumerate_field(ctx)) {
        if (z.is_zero()) continue;
        if (z.pow(n_eff) == a) return z;
    }
    fail(Errc::NoSuchRoot, "scan exhausted unexpectedly");
}

} // namespace

FieldElement nth_root(const FieldElement& a, const Int& n) {
    if (n < 1) fail(Errc::UsageError, "root order must be positive");
    if (a.is_zero()) fail(Errc::ZeroInput, "cannot take a root of zero");
    if (n == 1) return a;
    switch (a.kind()) {
        case FieldKind::Rational: return nth_root_rational(a, n);
        case FieldKind::Cyclotomic: return nth_root_cyclotomic(a, n);
        case FieldKind::Finite: return nth_root_finite(a, n);
    }
    fail(Errc::NoSuchRoot, "unreachable");
}

FieldElement frobenius(const FieldElement& a, const Int& q) {
    if (a.kind() != FieldKind::Finite)
        fail(Errc::BadFieldMismatch, "frobenius requires a finite field");
    if (q < 1) fail(Errc::BadFieldMismatch, "frobenius exponent must be a positive power of p");
    Int rest = q;
    const Int& p = a.ctx()->characteristic();
    while (rest > 1) {
        if (rest % p != 0)
            fail(Errc::BadFieldMismatch,
                 q.get_str() + " is not a power of the characteristic " + p.get_str());
        rest /= p;
    }
    return a.pow(q);
}

FieldConfig build_extension(const Int& p, long e) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
        fail(Errc::UsageError, "finite field characteristic must be prime");
    if (e < 1) fail(Errc::UsageError, "extension degree must be >= 1");
    FieldConfig cfg = FieldConfig::finite(p, e);
    cfg.modulus = least_irreducible(p, e);
    return cfg;
}

} // namespace compoly
