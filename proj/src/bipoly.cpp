#include "compoly/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace compoly {

// --- XYPoly -----------------------------------------------------------------

XYPoly XYPoly::monomial(const FieldElement& c, long long xe, long ye) {
    XYPoly p(c.ctx());
    p.add_term(xe, ye, c);
    return p;
}

void XYPoly::add_term(long long xe, long ye, const FieldElement& c) {
    if (c.is_zero()) return;
    Key k{xe, ye};
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

FieldElement XYPoly::coeff(long long xe, long ye) const {
    auto it = t_.find({xe, ye});
    if (it == t_.end()) return FieldElement::zero(ctx_);
    return it->second;
}

long XYPoly::deg_y() const {
    long d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k.second);
    return d;
}

long long XYPoly::min_xexp() const {
    if (t_.empty()) return 0;
    long long m = t_.begin()->first.first;
    for (const auto& [k, c] : t_) m = std::min(m, k.first);
    return m;
}

XYPoly XYPoly::operator-() const {
    XYPoly p(ctx_);
    for (const auto& [k, c] : t_) p.t_.emplace(k, -c);
    return p;
}

XYPoly& XYPoly::operator+=(const XYPoly& o) {
    for (const auto& [k, c] : o.t_) add_term(k.first, k.second, c);
    return *this;
}

XYPoly& XYPoly::operator-=(const XYPoly& o) {
    for (const auto& [k, c] : o.t_) add_term(k.first, k.second, -c);
    return *this;
}

XYPoly& XYPoly::operator*=(const XYPoly& o) {
    XYPoly out(ctx_ ? ctx_ : o.ctx_);
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_)
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    *this = std::move(out);
    return *this;
}

XYPoly XYPoly::scaled(const FieldElement& c) const {
    XYPoly p(ctx_);
    if (c.is_zero()) return p;
    for (const auto& [k, v] : t_) {
        FieldElement prod = v * c;
        if (!prod.is_zero()) p.t_.emplace(k, prod);
    }
    return p;
}

XYPoly XYPoly::shifted_x(long long k) const {
    XYPoly p(ctx_);
    for (const auto& [key, v] : t_) p.t_.emplace(Key{key.first + k, key.second}, v);
    return p;
}

XYPoly XYPoly::pow(long k) const {
    XYPoly acc = monomial(FieldElement::one(ctx_), 0, 0);
    for (long i = 0; i < k; ++i) acc *= *this;
    return acc;
}

namespace {

// Leading term under lex order y > x (exponents assumed nonnegative in x
// where this is used for division).
XYPoly::Key leading_key(const std::map<XYPoly::Key, FieldElement>& terms) {
    XYPoly::Key best = terms.begin()->first;
    for (const auto& [k, c] : terms) {
        if (k.second > best.second || (k.second == best.second && k.first > best.first))
            best = k;
    }
    return best;
}

} // namespace

XYPoly XYPoly::divexact(const XYPoly& b) const {
    if (b.is_zero()) throw std::logic_error("exact division by zero polynomial");
    if (is_zero()) return XYPoly(ctx_);
    // Shift Laurent exponents to nonnegative range first.
    long long sa = min_xexp(), sb = b.min_xexp();
    XYPoly rem = shifted_x(-sa);
    XYPoly den = b.shifted_x(-sb);
    XYPoly quot(ctx_);
    Key lb = leading_key(den.t_);
    FieldElement lb_inv = den.t_.at(lb).inverse();
    while (!rem.is_zero()) {
        Key lr = leading_key(rem.t_);
        if (lr.first < lb.first || lr.second < lb.second)
            throw std::logic_error("inexact bivariate division");
        FieldElement c = rem.t_.at(lr) * lb_inv;
        long long dx = lr.first - lb.first;
        long dy = lr.second - lb.second;
        quot.add_term(dx, dy, c);
        XYPoly piece = den.scaled(c);
        rem -= XYPoly::monomial(FieldElement::one(ctx_), dx, dy) * piece;
    }
    return quot.shifted_x(sa - sb);
}

// --- BivariatePoly ----------------------------------------------------------

BivariatePoly BivariatePoly::from_terms(const FieldCtx& ctx,
                                        const std::map<XYPoly::Key, FieldElement>& terms) {
    long m = -1;
    for (const auto& [k, c] : terms) {
        if (c.is_zero()) continue;
        if (k.second < 0) fail(Errc::NonPolynomial, "negative y-exponent");
        m = std::max(m, k.second);
    }
    if (m < 0) fail(Errc::ZeroInput, "zero polynomial cannot be monic in y");
    BivariatePoly f;
    f.ctx_ = ctx;
    f.coeffs_.assign(m + 1, XPoly{});
    for (const auto& [k, c] : terms) {
        if (c.is_zero()) continue;
        f.coeffs_[k.second][k.first] = c;
    }
    const XPoly& lead = f.coeffs_[m];
    if (lead.size() != 1 || lead.begin()->first != 0 || !lead.begin()->second.is_one())
        fail(Errc::NonPolynomial, "polynomial is not monic in y");
    return f;
}

BivariatePoly BivariatePoly::from_xypoly(const XYPoly& p) {
    return from_terms(p.ctx(), p.terms());
}

BivariatePoly BivariatePoly::linear_in_y(const FieldCtx& ctx, const XPoly& rhs) {
    std::map<XYPoly::Key, FieldElement> terms;
    terms[{0, 1}] = FieldElement::one(ctx);
    for (const auto& [i, c] : rhs)
        if (!c.is_zero()) terms[{i, 0}] = -c;
    return from_terms(ctx, terms);
}

const BivariatePoly::XPoly& BivariatePoly::ycoeff(long j) const {
    static const XPoly empty;
    if (j < 0 || j > deg_y()) return empty;
    return coeffs_[j];
}

FieldElement BivariatePoly::coeff(long long i, long j) const {
    if (j < 0 || j > deg_y()) return FieldElement::zero(ctx_);
    auto it = coeffs_[j].find(i);
    if (it == coeffs_[j].end()) return FieldElement::zero(ctx_);
    return it->second;
}

std::map<XYPoly::Key, FieldElement> BivariatePoly::terms() const {
    std::map<XYPoly::Key, FieldElement> out;
    for (long j = 0; j <= deg_y(); ++j)
        for (const auto& [i, c] : coeffs_[j]) out[{i, j}] = c;
    return out;
}

XYPoly BivariatePoly::to_xypoly() const {
    XYPoly p(ctx_);
    for (long j = 0; j <= deg_y(); ++j)
        for (const auto& [i, c] : coeffs_[j]) p.add_term(i, j, c);
    return p;
}

namespace {

std::string monomial_string(long long i, long j) {
    std::ostringstream out;
    if (i != 0) {
        out << "x";
        if (i != 1) {
            out << "^";
            if (i < 0)
                out << "(" << i << ")";
            else
                out << i;
        }
    }
    if (j != 0) {
        if (i != 0) out << "*";
        out << "y";
        if (j != 1) out << "^" << j;
    }
    return out.str();
}

} // namespace

std::string BivariatePoly::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (long j = deg_y(); j >= 0; --j) {
        for (const auto& [i, c] : coeffs_[j]) {
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
            std::string mono = monomial_string(i, j);
            if (mono.empty()) {
                out << s;
            } else {
                if (s != "1") out << s << "*";
                out << mono;
            }
        }
    }
    if (first) return "0";
    return out.str();
}

// --- Newton polygon ---------------------------------------------------------

NewtonPolygon newton_polygon(const XYPoly& f) {
    // One support point per x-exponent: the least y-degree.
    std::map<long long, long> low;
    std::vector<std::pair<long long, long>> support;
    for (const auto& [key, c] : f.terms()) {
        auto [i, j] = key;
        support.push_back({i, j});
        auto it = low.find(i);
        if (it == low.end() || j < it->second) low[i] = j;
    }
    // Lower hull by monotone chain over increasing i; slopes must strictly
    // increase along the chain.
    std::vector<std::pair<long long, long>> chain;
    for (const auto& [i, j] : low) {
        std::pair<long long, long> p{i, j};
        while (chain.size() >= 2) {
            auto& a = chain[chain.size() - 2];
            auto& b = chain.back();
            // slope(b, p) <= slope(a, b)  <=>  cross product test
            __int128 lhs = static_cast<__int128>(p.second - b.second) * (b.first - a.first);
            __int128 rhs = static_cast<__int128>(b.second - a.second) * (p.first - b.first);
            if (lhs <= rhs)
                chain.pop_back();
            else
                break;
        }
        chain.push_back(p);
    }
    // Keep only the strictly descending part.
    NewtonPolygon out;
    for (const auto& v : chain) {
        if (!out.vertices.empty() && v.second >= out.vertices.back().second) break;
        out.vertices.push_back(v);
    }
    for (size_t k = 0; k + 1 < out.vertices.size(); ++k) {
        auto [i0, j0] = out.vertices[k];
        auto [i1, j1] = out.vertices[k + 1];
        NewtonEdge edge;
        edge.slope = make_rat(Int(static_cast<long>(j1 - j0)), Int(static_cast<long>(i1 - i0)));
        for (const auto& [i, j] : support) {
            if (i < i0 || i > i1) continue;
            // On the segment iff (j - j0) * (i1 - i0) == (j1 - j0) * (i - i0).
            __int128 lhs = static_cast<__int128>(j - j0) * (i1 - i0);
            __int128 rhs = static_cast<__int128>(j1 - j0) * (i - i0);
            if (lhs == rhs) edge.points.push_back({i, j});
        }
        std::sort(edge.points.begin(), edge.points.end());
        out.edges.push_back(std::move(edge));
    }
    return out;
}

NewtonPolygon newton_polygon(const BivariatePoly& f) {
    return newton_polygon(f.to_xypoly());
}

std::optional<long> homogeneous_degree(const BivariatePoly& f) {
    std::optional<long> n;
    for (long j = 0; j <= f.deg_y(); ++j)
        for (const auto& [i, c] : f.ycoeff(j)) {
            if (i < 0) return std::nullopt;
            long total = static_cast<long>(i) + j;
            if (!n)
                n = total;
            else if (*n != total)
                return std::nullopt;
        }
    return n;
}

UnivariatePoly associated_poly(const BivariatePoly& f) {
    auto n = homogeneous_degree(f);
    if (!n) fail(Errc::NotInMh, "polynomial is not homogeneous");
    const FieldCtx& ctx = f.ctx();
    if (f.coeff(*n, 0).is_zero()) fail(Errc::NotInMh, "x^n coefficient vanishes");
    if (f.coeff(0, *n).is_zero()) fail(Errc::NotInMh, "y^n coefficient vanishes");
    std::vector<FieldElement> coeffs;
    coeffs.reserve(*n + 1);
    for (long j = 0; j <= *n; ++j) coeffs.push_back(f.coeff(*n - j, j));
    return UnivariatePoly::from_coeffs(ctx, std::move(coeffs));
}

// --- substitutions for the composed operations ------------------------------

CompositionOperands substitute_for_composition(const BivariatePoly& f, const BivariatePoly& g,
                                               SubstMode mode) {
    const FieldCtx& ctx = f.ctx();
    CompositionOperands out;

    // f(x, z): y-coefficients reread as z-coefficients (pure x-polynomials).
    out.f_z.assign(f.deg_y() + 1, XYPoly(ctx));
    for (long j = 0; j <= f.deg_y(); ++j)
        for (const auto& [i, c] : f.ycoeff(j)) out.f_z[j].add_term(i, 0, c);

    long m2 = g.deg_y();
    out.g_z.assign(m2 + 1, XYPoly(ctx));
    if (mode == SubstMode::sum) {
        // g(x, y - z): expand (y - z)^j by binomials in the field.
        for (long j = 0; j <= m2; ++j) {
            // Pascal row for C(j, t).
            std::vector<FieldElement> binom{FieldElement::one(ctx)};
            for (long t = 1; t <= j; ++t) {
                std::vector<FieldElement> next(t + 1, FieldElement::zero(ctx));
                next[0] = FieldElement::one(ctx);
                next[t] = FieldElement::one(ctx);
                for (long u = 1; u < t; ++u) next[u] = binom[u - 1] + binom[u];
                binom = std::move(next);
            }
            for (const auto& [i, c] : g.ycoeff(j)) {
                FieldElement sign = FieldElement::one(ctx); // (-1)^t
                for (long t = 0; t <= j; ++t) {
                    out.g_z[t].add_term(i, j - t, c * binom[t] * sign);
                    sign = -sign;
                }
            }
        }
    } else {
        // z^{m2} g(x, y/z): the term c x^i y^j lands at z-degree m2 - j.
        for (long j = 0; j <= m2; ++j)
            for (const auto& [i, c] : g.ycoeff(j)) out.g_z[m2 - j].add_term(i, j, c);
    }
    return out;
}

} // namespace compoly
