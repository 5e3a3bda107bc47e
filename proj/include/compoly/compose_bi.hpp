#pragma once

#include <optional>
#include <vector>

#include "compoly/bipoly.hpp"
#include "compoly/puiseux.hpp"

namespace compoly {

// Result of one bivariate composition. `factored` holds the m1*m2 combined
// root series s (the factors are y - s); `expanded` holds the y-coefficients
// of their product, index = y-degree, truncated at the requested bound (each
// coefficient additionally carries its own propagated validity bound).
// `exact` is the resultant-computed polynomial, present for the sum and
// multiplication, never for the composed product: function composition does
// not commute with symmetric-function elimination, so no resultant analogue
// exists there.
struct ComposedResult {
    std::vector<PuiseuxSeries> factored;
    std::vector<PuiseuxSeries> expanded;
    std::optional<BivariatePoly> exact;
};

// Exact route only: Res_z(f(x,z), g(x, y-z)) and Res_z(f(x,z), z^{m2} g(x,
// y/z)). Defined for any monic-in-y inputs over one field (Laurent
// x-coefficients welcome); the multiplication requires g(x,0) != 0 (ZeroRoot).
BivariatePoly composed_sum_exact(const BivariatePoly& f, const BivariatePoly& g);
BivariatePoly composed_mul_exact(const BivariatePoly& f, const BivariatePoly& g);

// prod prod (y - (p_i + q_j)) over the branches p_i of f and q_j of g: both
// the exact resultant route and the branch route, which must agree mod x^T.
// Branch-expansion failures (small characteristic, heads outside the field,
// Laurent inputs) propagate.
ComposedResult composed_sum(const BivariatePoly& f, const BivariatePoly& g, const Rat& T);

// prod prod (y - p_i q_j); additionally ZeroRoot when y divides g.
ComposedResult composed_mul(const BivariatePoly& f, const BivariatePoly& g, const Rat& T);

// prod prod (y - p_i(q_j^{1/n1})): substitution of each branch of g into each
// branch of f, the n1-th root taken branch-wise. Requires f(0,0) = g(0,0) = 0
// (ConstantTermNonzero) and every branch of g of strictly positive valuation
// (NonpositiveValuation). Branches are internally expanded deep enough that
// every factor is valid through x^T whenever the input data permits.
ComposedResult composed_product(const BivariatePoly& f, const BivariatePoly& g, const Rat& T);

} // namespace compoly
