#include "compoly/puiseux.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "compoly/error.hpp"

namespace compoly {

namespace {

long long ll_gcd(long long a, long long b) { return std::gcd(a, b); }

long long ll_lcm(long long a, long long b) {
    return a / ll_gcd(a, b) * b;
}

// Ramification must be positive and, in characteristic p, prime to p.
void check_ram(const FieldCtx& ctx, long long n) {
    if (n <= 0)
        fail(Errc::UsageError, "series ramification must be positive");
    const Int& p = ctx->characteristic();
    if (p != 0 && Int(static_cast<long>(n)) % p == 0)
        fail(Errc::CharDividesDenominator,
             "ramification " + std::to_string(n) + " is divisible by the characteristic " +
                 p.get_str());
}

Rat exponent_of(long long u, long long n) {
    return make_rat(Int(static_cast<long>(u)), Int(static_cast<long>(n)));
}

// x^m for integer m >= 0 via repeated squaring on truncated series.
PuiseuxSeries powi(const PuiseuxSeries& s, long long m) {
    if (m < 0) fail(Errc::UsageError, "negative integer power of a series");
    PuiseuxSeries acc = PuiseuxSeries::monomial(FieldElement::one(s.ctx()), 0, 1, s.truncation());
    if (m == 0) return acc;
    PuiseuxSeries base = s;
    long long e = m;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

} // namespace

// --- Trunc -------------------------------------------------------------

const Rat& Trunc::value() const {
    if (!finite_) fail(Errc::UsageError, "no finite value on an exact truncation bound");
    return v_;
}

Trunc Trunc::shifted(const Rat& d) const {
    return finite_ ? Trunc::at(v_ + d) : *this;
}

Trunc Trunc::scaled(const Rat& s) const {
    if (s <= 0) fail(Errc::UsageError, "truncation bounds scale by positive factors only");
    return finite_ ? Trunc::at(v_ * s) : *this;
}

Trunc min(const Trunc& a, const Trunc& b) {
    if (!a.finite_) return b;
    if (!b.finite_) return a;
    return a.v_ <= b.v_ ? a : b;
}

// --- PuiseuxSeries -----------------------------------------------------

void PuiseuxSeries::prune() {
    for (auto it = t_.begin(); it != t_.end();) {
        if (it->second.is_zero() || !trunc_.covers(exponent_of(it->first, ram_)))
            it = t_.erase(it);
        else
            ++it;
    }
}

PuiseuxSeries PuiseuxSeries::zero(const FieldCtx& ctx, Trunc t) {
    PuiseuxSeries s;
    s.ctx_ = ctx;
    s.ram_ = 1;
    s.trunc_ = t;
    return s;
}

PuiseuxSeries PuiseuxSeries::monomial(const FieldElement& c, long long u, long long n, Trunc t) {
    check_ram(c.ctx(), n);
    PuiseuxSeries s;
    s.ctx_ = c.ctx();
    s.ram_ = n;
    s.trunc_ = t;
    if (!c.is_zero()) s.t_.emplace(u, c);
    s.prune();
    return s;
}

PuiseuxSeries PuiseuxSeries::from_terms(const FieldCtx& ctx, long long n,
                                        std::map<long long, FieldElement> terms, Trunc t) {
    check_ram(ctx, n);
    PuiseuxSeries s;
    s.ctx_ = ctx;
    s.ram_ = n;
    s.trunc_ = t;
    s.t_ = std::move(terms);
    for (const auto& [u, c] : s.t_)
        if (!ctx->same_field(*c.ctx()))
            fail(Errc::BadFieldMismatch, "series coefficient from a different field");
    s.prune();
    return s;
}

std::optional<Rat> PuiseuxSeries::val() const {
    if (t_.empty()) return std::nullopt;
    return exponent_of(t_.begin()->first, ram_);
}

FieldElement PuiseuxSeries::leading_coeff() const {
    if (t_.empty()) fail(Errc::ZeroInput, "zero series has no leading coefficient");
    return t_.begin()->second;
}

FieldElement PuiseuxSeries::coeff_at(const Rat& e) const {
    Rat scaled = e * Int(static_cast<long>(ram_));
    if (scaled.get_den() != 1) return FieldElement::zero(ctx_);
    if (!mpz_fits_slong_p(scaled.get_num().get_mpz_t())) return FieldElement::zero(ctx_);
    auto it = t_.find(static_cast<long long>(scaled.get_num().get_si()));
    return it == t_.end() ? FieldElement::zero(ctx_) : it->second;
}

PuiseuxSeries PuiseuxSeries::rescaled(long long L) const {
    if (L % ram_ != 0) fail(Errc::UsageError, "rescale target must be a multiple of the ramification");
    check_ram(ctx_, L);
    if (L == ram_) return *this;
    long long k = L / ram_;
    PuiseuxSeries s;
    s.ctx_ = ctx_;
    s.ram_ = L;
    s.trunc_ = trunc_;
    for (const auto& [u, c] : t_) s.t_.emplace(u * k, c);
    return s;
}

PuiseuxSeries PuiseuxSeries::normalized() const {
    long long g = ram_;
    for (const auto& [u, c] : t_) g = ll_gcd(g, u < 0 ? -u : u);
    if (g <= 1) return *this;
    PuiseuxSeries s;
    s.ctx_ = ctx_;
    s.ram_ = ram_ / g;
    s.trunc_ = trunc_;
    for (const auto& [u, c] : t_) s.t_.emplace(u / g, c);
    return s;
}

PuiseuxSeries PuiseuxSeries::truncated(const Trunc& T) const {
    PuiseuxSeries s = *this;
    s.trunc_ = min(trunc_, T);
    s.prune();
    return s;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
    PuiseuxSeries s = *this;
    for (auto& [u, c] : s.t_) c = -c;
    return s;
}

PuiseuxSeries operator+(const PuiseuxSeries& p, const PuiseuxSeries& q) {
    if (!p.ctx_->same_field(*q.ctx_))
        fail(Errc::BadFieldMismatch, "series addition across different fields");
    long long L = ll_lcm(p.ram_, q.ram_);
    PuiseuxSeries a = p.rescaled(L), b = q.rescaled(L);
    PuiseuxSeries s;
    s.ctx_ = p.ctx_;
    s.ram_ = L;
    s.trunc_ = min(p.trunc_, q.trunc_);
    s.t_ = std::move(a.t_);
    for (const auto& [u, c] : b.t_) {
        auto [it, fresh] = s.t_.emplace(u, c);
        if (!fresh) it->second = it->second + c;
    }
    s.prune();
    return s;
}

PuiseuxSeries operator-(const PuiseuxSeries& p, const PuiseuxSeries& q) {
    return p + (-q);
}

PuiseuxSeries operator*(const PuiseuxSeries& p, const PuiseuxSeries& q) {
    if (!p.ctx_->same_field(*q.ctx_))
        fail(Errc::BadFieldMismatch, "series multiplication across different fields");
    long long L = ll_lcm(p.ram_, q.ram_);
    PuiseuxSeries a = p.rescaled(L), b = q.rescaled(L);

    // The product is exact below min(val(p)+T_q, val(q)+T_p); unknown tails
    // only enter multiplied by the other factor's leading term or each other.
    Trunc bound = Trunc::infinity();
    if (auto v = p.val()) bound = min(bound, q.trunc_.shifted(*v));
    if (auto v = q.val()) bound = min(bound, p.trunc_.shifted(*v));
    if (p.is_zero() && q.is_zero() && p.trunc_.is_finite() && q.trunc_.is_finite())
        bound = Trunc::at(p.trunc_.value() + q.trunc_.value());

    PuiseuxSeries s;
    s.ctx_ = p.ctx_;
    s.ram_ = L;
    s.trunc_ = bound;
    for (const auto& [ua, ca] : a.t_)
        for (const auto& [ub, cb] : b.t_) {
            long long u = ua + ub;
            if (!bound.covers(exponent_of(u, L))) continue;
            FieldElement add = ca * cb;
            auto [it, fresh] = s.t_.emplace(u, add);
            if (!fresh) it->second = it->second + add;
        }
    s.prune();
    return s;
}

PuiseuxSeries PuiseuxSeries::scaled(const FieldElement& c) const {
    if (!ctx_->same_field(*c.ctx()))
        fail(Errc::BadFieldMismatch, "series scaling by an element of a different field");
    PuiseuxSeries s = *this;
    if (c.is_zero()) {
        s.t_.clear();
        return s;
    }
    for (auto& [u, cf] : s.t_) cf = cf * c;
    s.prune();
    return s;
}

bool PuiseuxSeries::operator==(const PuiseuxSeries& o) const {
    if (!ctx_->same_field(*o.ctx_) || trunc_ != o.trunc_) return false;
    PuiseuxSeries a = normalized(), b = o.normalized();
    if (a.ram_ != b.ram_ || a.t_.size() != b.t_.size()) return false;
    auto it = b.t_.begin();
    for (const auto& [u, c] : a.t_) {
        if (u != it->first || !(c == it->second)) return false;
        ++it;
    }
    return true;
}

std::string PuiseuxSeries::to_string() const {
    std::ostringstream out;
    if (t_.empty()) {
        out << "0";
    } else {
        bool first = true;
        for (const auto& [u, c] : t_) {
            if (!first) out << " + ";
            first = false;
            std::string cs = c.to_string();
            Rat e = exponent_of(u, ram_);
            if (e == 0) {
                out << cs;
                continue;
            }
            bool unit = (cs == "1");
            if (!unit) {
                if (cs.find(' ') != std::string::npos || cs.find('+') != std::string::npos)
                    out << "(" << cs << ")*";
                else
                    out << cs << "*";
            }
            out << "x";
            if (e != 1) {
                if (e.get_den() == 1 && e > 0)
                    out << "^" << e.get_num().get_str();
                else
                    out << "^(" << rat_to_string(e) << ")";
            }
        }
    }
    if (trunc_.is_finite()) out << " + O(x^(" << rat_to_string(trunc_.value()) << "))";
    return out.str();
}

// --- derived operations ------------------------------------------------

PuiseuxSeries pow_rational(const PuiseuxSeries& p, const Rat& r) {
    if (p.is_zero()) fail(Errc::ZeroInput, "cannot take powers of the zero series");
    const FieldCtx& ctx = p.ctx();

    const Int& a = r.get_num();
    const Int& d = r.get_den();
    if (!mpz_fits_slong_p(d.get_mpz_t()) || !mpz_fits_slong_p(a.get_mpz_t()))
        fail(Errc::UsageError, "power exponent out of range");
    long long dn = d.get_si();
    long long an = a.get_si();

    long long n = p.ramification();
    long long N = n * dn;
    check_ram(ctx, N); // rejects characteristic dividing the new denominator

    long long umin = p.terms().begin()->first;
    FieldElement c = p.terms().begin()->second;

    // c^r through the canonical d-th root.
    FieldElement cr = (dn == 1) ? c.pow(Int(static_cast<long>(an)))
                                : nth_root(c, Int(static_cast<long>(dn))).pow(Int(static_cast<long>(an)));

    // The tail series 1 + u on the original ramification, relative to x^{v}.
    Rat v = *p.val();
    Trunc rel = p.truncation().shifted(-v);
    std::map<long long, FieldElement> tail;
    FieldElement cinv = c.inverse();
    for (const auto& [u, cf] : p.terms())
        if (u != umin) tail.emplace(u - umin, cf * cinv);
    PuiseuxSeries u_ser = PuiseuxSeries::from_terms(ctx, n, std::move(tail), rel);

    bool terminating = (dn == 1 && an >= 0);
    if (!u_ser.is_zero() && !rel.is_finite() && !terminating)
        fail(Errc::UsageError,
             "fractional or negative powers of an exact non-monomial series require a finite truncation");

    // Binomial series sum binom(r,k) u^k, truncated at the relative bound.
    PuiseuxSeries acc =
        PuiseuxSeries::monomial(FieldElement::one(ctx), 0, 1, rel);
    if (!u_ser.is_zero()) {
        Rat vu = *u_ser.val();
        PuiseuxSeries upow = PuiseuxSeries::monomial(FieldElement::one(ctx), 0, 1, rel);
        Rat binom(1);
        long long k = 0;
        while (true) {
            ++k;
            binom *= (r - Rat(static_cast<long>(k) - 1)) / Rat(static_cast<long>(k));
            if (binom == 0) break; // integer exponent: series terminates
            if (rel.is_finite() && !(Rat(static_cast<long>(k)) * vu < rel.value())) break;
            upow = (upow * u_ser).truncated(rel);
            if (upow.is_zero()) break;
            acc = acc + upow.scaled(FieldElement::from_rational(ctx, binom));
        }
    }

    // Assemble c^r x^{rv} * acc on ramification N = n*d.
    acc = acc.rescaled(n); // acc lives on ramification 1 or n
    std::map<long long, FieldElement> res;
    for (const auto& [w, cf] : acc.terms())
        res.emplace(an * umin + dn * w, cf * cr);
    Trunc bound = p.truncation().shifted(-v).shifted(r * v);
    return PuiseuxSeries::from_terms(ctx, N, std::move(res), bound);
}

PuiseuxSeries compose(const PuiseuxSeries& p, const PuiseuxSeries& q) {
    if (!p.ctx()->same_field(*q.ctx()))
        fail(Errc::BadFieldMismatch, "series composition across different fields");
    auto vq = q.val();
    if (!vq || !(*vq > 0))
        fail(Errc::NonpositiveValuation, "composition requires a substituted series of positive valuation");

    long long n = p.ramification();
    PuiseuxSeries s = (n == 1) ? q : pow_rational(q, make_rat(Int(1), Int(static_cast<long>(n))));

    Trunc target = min(p.truncation().scaled(*vq), q.truncation());

    PuiseuxSeries acc = PuiseuxSeries::zero(p.ctx(), Trunc::infinity());
    if (!p.terms().empty()) {
        long long prev = p.terms().begin()->first;
        if (prev < 0)
            fail(Errc::UsageError, "composition requires a series with nonnegative exponents");
        PuiseuxSeries cur = prev == 0
                                ? PuiseuxSeries::monomial(FieldElement::one(p.ctx()), 0, 1, s.truncation())
                                : powi(s, prev);
        acc = cur.scaled(p.terms().begin()->second);
        for (auto it = std::next(p.terms().begin()); it != p.terms().end(); ++it) {
            cur = cur * powi(s, it->first - prev);
            prev = it->first;
            acc = acc + cur.scaled(it->second);
        }
    }
    return acc.truncated(target);
}

PuiseuxSeries conjugate(const PuiseuxSeries& p, const FieldElement& omega, long long i) {
    if (!p.ctx()->same_field(*omega.ctx()))
        fail(Errc::BadFieldMismatch, "conjugation root from a different field");
    long long n = p.ramification();
    if (!omega.pow(Int(static_cast<long>(n))).is_one())
        fail(Errc::BadRootOrder,
             "conjugation requires a root of unity of order dividing the ramification " +
                 std::to_string(n));

    std::vector<FieldElement> pw;
    pw.reserve(static_cast<size_t>(n));
    pw.push_back(FieldElement::one(p.ctx()));
    for (long long j = 1; j < n; ++j) pw.push_back(pw.back() * omega);

    std::map<long long, FieldElement> res;
    long long im = ((i % n) + n) % n;
    for (const auto& [u, c] : p.terms()) {
        long long um = ((u % n) + n) % n;
        long long e = (im * um) % n;
        res.emplace(u, c * pw[static_cast<size_t>(e)]);
    }
    return PuiseuxSeries::from_terms(p.ctx(), n, std::move(res), p.truncation());
}

int series_cmp(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    auto va = a.val(), vb = b.val();
    if (!va && !vb) return 0;
    if (!va) return 1; // zero series (valuation +inf) sorts last
    if (!vb) return -1;
    if (*va != *vb) return *va < *vb ? -1 : 1;

    long long L = ll_lcm(a.ramification(), b.ramification());
    PuiseuxSeries x = a.rescaled(L), y = b.rescaled(L);
    auto ia = x.terms().begin(), ib = y.terms().begin();
    const FieldElement zero = FieldElement::zero(a.ctx());
    while (ia != x.terms().end() || ib != y.terms().end()) {
        long long ua = ia != x.terms().end() ? ia->first : std::numeric_limits<long long>::max();
        long long ub = ib != y.terms().end() ? ib->first : std::numeric_limits<long long>::max();
        if (ua < ub) {
            int c = ia->second.cmp(zero);
            if (c != 0) return c;
            ++ia;
        } else if (ub < ua) {
            int c = zero.cmp(ib->second);
            if (c != 0) return c;
            ++ib;
        } else {
            int c = ia->second.cmp(ib->second);
            if (c != 0) return c;
            ++ia;
            ++ib;
        }
    }
    return 0;
}

bool equal_mod(const PuiseuxSeries& a, const PuiseuxSeries& b, const Rat& T) {
    PuiseuxSeries d = a - b;
    for (const auto& [u, c] : d.terms()) {
        Rat e = make_rat(Int(static_cast<long>(u)), Int(static_cast<long>(d.ramification())));
        if (e < T) return false;
    }
    return true;
}

} // namespace compoly
