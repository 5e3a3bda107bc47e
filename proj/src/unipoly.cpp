#include "compoly/unipoly.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "compoly/resultant.hpp"

namespace compoly {

void UnivariatePoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UnivariatePoly UnivariatePoly::zero(const FieldCtx& ctx) {
    UnivariatePoly p;
    p.ctx_ = ctx;
    return p;
}

UnivariatePoly UnivariatePoly::one(const FieldCtx& ctx) {
    return constant(FieldElement::one(ctx));
}

UnivariatePoly UnivariatePoly::variable(const FieldCtx& ctx) {
    return monomial(FieldElement::one(ctx), 1);
}

UnivariatePoly UnivariatePoly::constant(const FieldElement& c) {
    UnivariatePoly p;
    p.ctx_ = c.ctx();
    if (!c.is_zero()) p.c_.push_back(c);
    return p;
}

UnivariatePoly UnivariatePoly::monomial(const FieldElement& c, long k) {
    UnivariatePoly p;
    p.ctx_ = c.ctx();
    if (!c.is_zero()) {
        p.c_.assign(k + 1, FieldElement::zero(c.ctx()));
        p.c_[k] = c;
    }
    return p;
}

UnivariatePoly UnivariatePoly::from_coeffs(const FieldCtx& ctx, std::vector<FieldElement> coeffs) {
    UnivariatePoly p;
    p.ctx_ = ctx;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

UnivariatePoly UnivariatePoly::linear_root(const FieldElement& a) {
    UnivariatePoly p;
    p.ctx_ = a.ctx();
    p.c_ = {-a, FieldElement::one(a.ctx())};
    return p;
}

const FieldElement& UnivariatePoly::lc() const {
    if (c_.empty()) fail(Errc::ZeroInput, "zero polynomial has no leading coefficient");
    return c_.back();
}

FieldElement UnivariatePoly::coeff(long k) const {
    if (k < 0 || k >= static_cast<long>(c_.size())) return FieldElement::zero(ctx_);
    return c_[k];
}

bool UnivariatePoly::is_monic() const { return !c_.empty() && c_.back().is_one(); }

UnivariatePoly UnivariatePoly::monic() const {
    if (c_.empty() || is_monic()) return *this;
    return scaled(c_.back().inverse());
}

UnivariatePoly UnivariatePoly::operator-() const {
    UnivariatePoly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
}

UnivariatePoly& UnivariatePoly::operator+=(const UnivariatePoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement::zero(ctx_));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

UnivariatePoly& UnivariatePoly::operator-=(const UnivariatePoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement::zero(ctx_));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

UnivariatePoly& UnivariatePoly::operator*=(const UnivariatePoly& o) {
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<FieldElement> out(c_.size() + o.c_.size() - 1, FieldElement::zero(ctx_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    }
    c_ = std::move(out);
    trim();
    return *this;
}

UnivariatePoly UnivariatePoly::scaled(const FieldElement& c) const {
    UnivariatePoly p = *this;
    for (auto& x : p.c_) x *= c;
    p.trim();
    return p;
}

UnivariatePoly UnivariatePoly::shifted(long k) const {
    if (c_.empty() || k == 0) return *this;
    UnivariatePoly p = *this;
    p.c_.insert(p.c_.begin(), k, FieldElement::zero(ctx_));
    return p;
}

UnivariatePoly UnivariatePoly::pow(long k) const {
    UnivariatePoly acc = one(ctx_);
    for (long i = 0; i < k; ++i) acc *= *this;
    return acc;
}

void divrem(const UnivariatePoly& a, const UnivariatePoly& b, UnivariatePoly& q,
            UnivariatePoly& r) {
    if (b.is_zero()) fail(Errc::ZeroInput, "polynomial division by zero");
    q = UnivariatePoly::zero(a.ctx_);
    r = a;
    FieldElement inv = b.lc().inverse();
    while (!r.is_zero() && r.deg() >= b.deg()) {
        FieldElement c = r.lc() * inv;
        long shift = r.deg() - b.deg();
        q += UnivariatePoly::monomial(c, shift);
        r -= b.scaled(c).shifted(shift);
    }
}

UnivariatePoly UnivariatePoly::operator/(const UnivariatePoly& b) const {
    UnivariatePoly q, r;
    divrem(*this, b, q, r);
    return q;
}

UnivariatePoly UnivariatePoly::operator%(const UnivariatePoly& b) const {
    UnivariatePoly q, r;
    divrem(*this, b, q, r);
    return r;
}

UnivariatePoly UnivariatePoly::derivative() const {
    if (c_.size() <= 1) return zero(ctx_);
    std::vector<FieldElement> out;
    out.reserve(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
        out.push_back(c_[k] * FieldElement::from_integer(ctx_, static_cast<long>(k)));
    return from_coeffs(ctx_, std::move(out));
}

FieldElement UnivariatePoly::evaluate(const FieldElement& a) const {
    FieldElement acc = FieldElement::zero(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * a + *it;
    return acc;
}

UnivariatePoly UnivariatePoly::substitute(const UnivariatePoly& g) const {
    UnivariatePoly acc = zero(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
    return acc;
}

std::string UnivariatePoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (long k = deg(); k >= 0; --k) {
        const FieldElement& c = c_[k];
        if (c.is_zero()) continue;
        std::string s = c.to_string();
        bool neg = false;
        if (!s.empty() && s[0] == '-' && s.find(' ') == std::string::npos) {
            neg = true;
            s = s.substr(1);
        }
        if (s.find(' ') != std::string::npos) s = "(" + s + ")";
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (k == 0) {
            out << s;
        } else {
            if (s != "1") out << s << "*";
            out << var;
            if (k > 1) out << "^" << k;
        }
    }
    return out.str();
}

UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b) {
    UnivariatePoly x = a, y = b;
    while (!y.is_zero()) {
        UnivariatePoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

namespace {

// Euclidean-sequence resultant over a field:
// Res(A, B) = (-1)^{dA dB} lc(B)^{dA - dR} Res(B, R) with R = A mod B.
FieldElement euclidean_resultant(UnivariatePoly A, UnivariatePoly B) {
    const FieldCtx& ctx = A.ctx();
    FieldElement acc = FieldElement::one(ctx);
    bool negate = false;
    if (A.deg() < B.deg()) {
        if ((A.deg() & 1) && (B.deg() & 1)) negate = !negate;
        std::swap(A, B);
    }
    while (true) {
        if (B.is_zero()) return FieldElement::zero(ctx);
        if (B.deg() == 0) {
            FieldElement r = acc * B.lc().pow(A.deg());
            return negate ? -r : r;
        }
        UnivariatePoly R = A % B;
        long dR = R.is_zero() ? 0 : R.deg();
        if ((A.deg() & 1) && (B.deg() & 1)) negate = !negate;
        acc *= B.lc().pow(A.deg() - dR);
        A = std::move(B);
        B = std::move(R);
    }
}

} // namespace

FieldElement resultant(const UnivariatePoly& f, const UnivariatePoly& g) {
    if (f.is_zero() && g.is_zero()) fail(Errc::ZeroInput, "resultant of two zero polynomials");
    const FieldCtx& ctx = f.ctx();
    if (f.is_zero() || g.is_zero()) return FieldElement::zero(ctx);
    if (ctx->kind() == FieldKind::Finite) return euclidean_resultant(f, g);
    // Fraction-free subresultant sequence keeps characteristic-zero
    // coefficients from exploding into deep fraction towers.
    return subresultant_resultant<FieldElement>(
        f.coeffs(), g.coeffs(), FieldElement::zero(ctx), FieldElement::one(ctx),
        [](const FieldElement& a) { return a.is_zero(); },
        [](const FieldElement& a, const FieldElement& b) { return a - b; },
        [](const FieldElement& a, const FieldElement& b) { return a * b; },
        [](const FieldElement& a, const FieldElement& b) { return a / b; });
}

UnivariatePoly powmod(const UnivariatePoly& base, const Int& e, const UnivariatePoly& mod) {
    UnivariatePoly result = UnivariatePoly::one(base.ctx());
    UnivariatePoly b = base % mod;
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = (result * b) % mod;
        b = (b * b) % mod;
        k >>= 1;
    }
    return result;
}

bool is_irreducible(const UnivariatePoly& f) {
    if (f.ctx()->kind() != FieldKind::Finite)
        fail(Errc::NotFiniteField, "irreducibility test requires finite-field coefficients");
    if (f.deg() < 1) fail(Errc::ZeroInput, "irreducibility needs degree >= 1");
    if (f.deg() == 1) return true;
    UnivariatePoly m = f.monic();
    const Int& q = f.ctx()->cardinality();
    long n = m.deg();
    UnivariatePoly z = UnivariatePoly::variable(f.ctx());

    Int qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    if (powmod(z, qn, m) != z % m) return false;
    for (long l = 2; l <= n; ++l) {
        if (n % l != 0) continue;
        bool prime = true;
        for (long d = 2; d * d <= l; ++d)
            if (l % d == 0) prime = false;
        if (!prime) continue;
        Int qd;
        mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n / l));
        UnivariatePoly diff = powmod(z, qd, m) - z;
        if (gcd(m, diff).deg() != 0) return false;
    }
    return true;
}

namespace {

FieldElement random_element(const FieldCtx& ctx, std::mt19937_64& rng) {
    std::vector<Int> coords;
    for (long i = 0; i < ctx->ext_degree(); ++i)
        coords.push_back(Int(static_cast<unsigned long>(rng())) % ctx->characteristic());
    return FieldElement::finite_coords(ctx, std::move(coords));
}

// Split a monic product of distinct linear factors into its roots.
void split_linear_product(const UnivariatePoly& h, std::mt19937_64& rng,
                          std::vector<FieldElement>& out) {
    if (h.deg() <= 0) return;
    const FieldCtx& ctx = h.ctx();
    if (h.deg() == 1) {
        out.push_back(-h.coeff(0));
        return;
    }
    const Int& q = ctx->cardinality();
    UnivariatePoly factor = UnivariatePoly::zero(ctx);
    for (int attempt = 0; attempt < 256; ++attempt) {
        UnivariatePoly trial;
        if (mpz_odd_p(q.get_mpz_t())) {
            // gcd(h, (z + s)^{(q-1)/2} - 1) separates roots by quadratic character.
            UnivariatePoly shifted =
                UnivariatePoly::variable(ctx) + UnivariatePoly::constant(random_element(ctx, rng));
            trial = powmod(shifted, (q - 1) / 2, h) - UnivariatePoly::one(ctx);
        } else {
            // Characteristic 2: additive trace of a random multiple of z.
            UnivariatePoly r =
                UnivariatePoly::variable(ctx).scaled(random_element(ctx, rng)) % h;
            UnivariatePoly acc = r;
            Int steps = ctx->cardinality();
            for (Int w = 2; w < steps; w *= 2) {
                r = (r * r) % h;
                acc += r;
            }
            trial = acc % h;
        }
        UnivariatePoly g = gcd(h, trial);
        if (g.deg() > 0 && g.deg() < h.deg()) {
            factor = g;
            break;
        }
    }
    if (factor.is_zero())
        fail(Errc::SearchBudgetExceeded, "root splitting failed to separate factors");
    split_linear_product(factor, rng, out);
    split_linear_product(h / factor, rng, out);
}

} // namespace

std::vector<std::pair<FieldElement, long>> roots_in_field(const UnivariatePoly& f,
                                                          std::uint64_t seed) {
    if (f.ctx()->kind() != FieldKind::Finite)
        fail(Errc::NotFiniteField, "root finding implemented over finite fields");
    if (f.deg() < 1) fail(Errc::ZeroInput, "root finding needs degree >= 1");
    if (f.derivative().is_zero())
        fail(Errc::InseparableInput,
             "polynomial is a p-th power composite (derivative vanishes identically)");

    const FieldCtx& ctx = f.ctx();
    UnivariatePoly m = f.monic();
    // Distinct in-field roots are exactly the roots of gcd(f, z^q - z).
    UnivariatePoly z = UnivariatePoly::variable(ctx);
    UnivariatePoly frob = powmod(z, ctx->cardinality(), m);
    UnivariatePoly linear_part = gcd(m, frob - z);

    std::mt19937_64 rng(seed);
    std::vector<FieldElement> roots;
    split_linear_product(linear_part, rng, roots);
    std::sort(roots.begin(), roots.end(),
              [](const FieldElement& a, const FieldElement& b) { return a < b; });

    std::vector<std::pair<FieldElement, long>> out;
    for (const FieldElement& a : roots) {
        UnivariatePoly rest = m;
        long mult = 0;
        while (!rest.is_zero() && rest.deg() >= 1 && rest.evaluate(a).is_zero()) {
            rest = rest / UnivariatePoly::linear_root(a);
            ++mult;
        }
        out.emplace_back(a, mult);
    }
    return out;
}

} // namespace compoly
