#pragma once
// Homogeneous bivariate polynomials over a finite field.
//
// A homogeneous f = sum_{i+j=n} a_ij x^i y^j with nonzero x^n and y^n corner
// coefficients has the single-slope Newton polygon, and all of its Puiseux
// branches are plain lines y = ax: substituting y = tx gives
// f(x, tx) = x^n * w_f(t) where w_f(t) = sum_j a_{n-j,j} t^j.  The whole
// bivariate composition theory therefore collapses onto the univariate
// "associated" polynomial w_f, and the composed product of two such f and g
// is the homogenization of the multiplicative composed product w_f * w_g.
//
// Classification is stricter than composition.  The classifier enforces the
// full degree window 0 < n < sqrt(p); composition and decomposition need
// only the minimum-polynomial property (w_f irreducible over the declared
// coefficient field, w_f(0) != 0) together with the product bound
// deg f * deg g < p, so composed results of degree past sqrt(p) remain
// valid operands for decomposition.

#include <cstddef>
#include <optional>
#include <vector>

#include "compoly/bipoly.hpp"
#include "compoly/compose_uni.hpp"
#include "compoly/field.hpp"
#include "compoly/unipoly.hpp"

namespace compoly {

enum class Membership {
    not_member, // inhomogeneous, degree out of range, or a vanishing corner
    in_Mh,      // homogeneous, 0 < n < sqrt(p), both corners nonzero
    in_Mhmin,   // additionally: w_f irreducible over the declared field
};

// Classify f over its own (finite) coefficient field.
Membership membership(const BivariatePoly& f);

struct HomogeneousElement {
    BivariatePoly poly;        // homogeneous, monic in y, both corners nonzero
    UnivariatePoly associated; // w_f, monic, irreducible, w_f(0) != 0
    long degree = 0;
};

// Validate and package f for composition: homogeneous of degree 0 < n < p,
// nonzero corners, irreducible associated polynomial.  NotMember otherwise.
HomogeneousElement homog_element(const BivariatePoly& f);

// y - ax for a != 0 (ZeroElement otherwise), the degree-one slice in which
// composition mirrors multiplication in the unit group of the field.
HomogeneousElement degree_one_element(const FieldElement& a);

// Composed product via the associated polynomials: requires coprime degrees
// (NotCoprime) with product below the characteristic (DegreeBoundExceeded).
HomogeneousElement homog_compose(const HomogeneousElement& f, const HomogeneousElement& g);

// The scaling witness a with f = (y - ax) composed with g, if one exists.
// Associate classes are exactly the orbits of this action, so the search
// runs over all q - 1 candidates in enumeration order.
std::optional<FieldElement> is_associate(const HomogeneousElement& f,
                                         const HomogeneousElement& g);

struct HomogDecomposition {
    // Indecomposable factors in ascending degree; degrees are pairwise
    // coprime and multiply to the input degree.
    std::vector<HomogeneousElement> factors;

    // Every other decomposition into indecomposables, each tied back to
    // `factors` by scaling units: with E(u) = y - ux,
    //   alternates[k].factors[permutation[i]] = E(units[i]) composed with factors[i],
    // and the units multiply to 1.
    struct Alternate {
        std::vector<HomogeneousElement> factors;
        std::vector<std::size_t> permutation;
        std::vector<FieldElement> units;
    };
    std::vector<Alternate> alternates;
};

// Full decomposition of F into indecomposable elements of coprime degrees,
// delegated to the univariate multiplicative decomposition of w_F.
HomogDecomposition homog_decompose(const HomogeneousElement& F, const Int& budget = Int(1) << 20);

} // namespace compoly
