#pragma once

#include <utility>
#include <vector>

#include "compoly/bipoly.hpp"
#include "compoly/puiseux.hpp"
#include "compoly/unipoly.hpp"

namespace compoly {

// A branch-expansion job: a monic-in-y polynomial with power-series
// x-coefficients, and the exponent depth to expand to.
struct ExpansionRequest {
    BivariatePoly f;
    Rat truncation; // expand each branch modulo x^T, T > 0
};

// Factor f = prod (y - p_i(x^{1/n})) over the coefficient field, each branch
// truncated at the requested depth. The expansion walks Newton-polygon edges,
// solves each edge's characteristic polynomial in the coefficient field,
// substitutes y = x^{gamma} (c + y') and recurses until the truncation depth.
//
// Errors: CharTooSmall when 0 < char(k) <= deg_y f; RootOutsideField when a
// characteristic polynomial does not fully split in the coefficient field
// (the message names that polynomial so callers can enlarge the field);
// UsageError for non-positive truncation or Laurent coefficients.
BranchSet expand_branches(const ExpansionRequest& req);

// The m series primitive(omega^i x^{1/m}) for i = 1..m, omega a primitive
// m-th root of unity from the canonical generator. Sorted canonically.
// For irreducible inputs these are exactly the branches.
BranchSet conjugate_closure(const PuiseuxSeries& primitive, long m);

// Oracle for the factorization identity: expand prod (y - p_i)^{mult} as a
// y-polynomial with series coefficients and compare against f, every
// coefficient modulo x^T.
bool verify_product(const BivariatePoly& f, const BranchSet& branches, const Rat& T);

// All roots of f that lie in its own coefficient field, with multiplicities,
// in canonical element order. Finite fields use the randomized-splitting root
// finder; characteristic zero detects rational roots (via modular lifting and
// rational reconstruction) and roots of the monomial shape r*zeta^j in
// cyclotomic fields.
std::vector<std::pair<FieldElement, long>> field_roots(const UnivariatePoly& f);

} // namespace compoly
