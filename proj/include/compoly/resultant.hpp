#pragma once

#include <vector>

namespace compoly {

// Resultant over an arbitrary integral domain by the subresultant
// pseudo-remainder sequence. Coefficient vectors are indexed by degree.
// The domain is described by four callables so the same engine serves field
// elements, F_q[x], and k[x,y] coefficients:
//   is_zero(r)      -- zero test
//   neg(r)          -- additive inverse
//   mul(a, b)       -- product
//   divexact(a, b)  -- exact quotient (guaranteed divisible here)
// plus explicit zero/one elements. Addition is supplied via sub(a, b) = a - b,
// which is all the remainder steps need.
template <class R, class IsZero, class Sub, class Mul, class DivExact>
class ResultantEngine {
public:
    ResultantEngine(R zero, R one, IsZero is_zero, Sub sub, Mul mul, DivExact divexact)
        : zero_(zero), one_(one), is_zero_(is_zero), sub_(sub), mul_(mul), divexact_(divexact) {}

    R resultant(std::vector<R> A, std::vector<R> B) {
        trim(A);
        trim(B);
        if (A.empty() || B.empty()) return zero_;
        bool negate = false;
        if (deg(A) < deg(B)) {
            if ((deg(A) & 1) && (deg(B) & 1)) negate = !negate;
            std::swap(A, B);
        }
        if (deg(B) == 0) return signed_result(power(B[0], deg(A)), negate);

        R g = one_, h = one_;
        while (true) {
            long dA = deg(A), dB = deg(B);
            long delta = dA - dB;
            if ((dA & 1) && (dB & 1)) negate = !negate;
            std::vector<R> rem = pseudo_rem(A, B, delta);
            if (rem.empty()) return zero_; // nonconstant common divisor
            A = std::move(B);
            R scale = mul_(g, power(h, delta));
            B.clear();
            B.reserve(rem.size());
            for (const R& c : rem) B.push_back(divexact_(c, scale));
            trim(B);
            g = A.back();
            if (delta > 0) h = divexact_(power(g, delta), power(h, delta - 1));
            if (deg(B) == 0) {
                long d = deg(A); // >= 1
                R num = power(B[0], d);
                return signed_result(divexact_(num, power(h, d - 1)), negate);
            }
        }
    }

private:
    static long deg(const std::vector<R>& v) { return static_cast<long>(v.size()) - 1; }

    void trim(std::vector<R>& v) {
        while (!v.empty() && is_zero_(v.back())) v.pop_back();
    }

    R power(const R& base, long k) {
        R acc = one_;
        for (long i = 0; i < k; ++i) acc = mul_(acc, base);
        return acc;
    }

    R signed_result(R r, bool negate) { return negate ? sub_(zero_, r) : r; }

    // lc(B)^{delta+1} * A reduced mod B (premultiplied remainder).
    std::vector<R> pseudo_rem(const std::vector<R>& A, const std::vector<R>& B, long delta) {
        std::vector<R> rem = A;
        const R& lb = B.back();
        long e = delta + 1;
        while (deg(rem) >= deg(B)) {
            long shift = deg(rem) - deg(B);
            R lr = rem.back();
            for (size_t i = 0; i < rem.size(); ++i) rem[i] = mul_(rem[i], lb);
            for (size_t i = 0; i + 1 < B.size(); ++i)
                rem[shift + i] = sub_(rem[shift + i], mul_(lr, B[i]));
            rem.pop_back(); // leading terms cancel by construction
            trim(rem);
            --e;
            if (rem.empty()) break;
        }
        if (!rem.empty())
            for (long i = 0; i < e; ++i)
                for (auto& c : rem) c = mul_(c, lb);
        return rem;
    }

    R zero_, one_;
    IsZero is_zero_;
    Sub sub_;
    Mul mul_;
    DivExact divexact_;
};

template <class R, class IsZero, class Sub, class Mul, class DivExact>
R subresultant_resultant(std::vector<R> A, std::vector<R> B, R zero, R one, IsZero is_zero,
                         Sub sub, Mul mul, DivExact divexact) {
    ResultantEngine<R, IsZero, Sub, Mul, DivExact> eng(std::move(zero), std::move(one), is_zero,
                                                       sub, mul, divexact);
    return eng.resultant(std::move(A), std::move(B));
}

} // namespace compoly
