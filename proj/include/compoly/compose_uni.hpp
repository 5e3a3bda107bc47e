#pragma once

#include <cstddef>
#include <vector>

#include "compoly/unipoly.hpp"

namespace compoly {

// The two root-combination laws: roots of the result are a ⋄ b over all root
// pairs (a, b) of the two inputs. Multiplication works in the unit group, so
// inputs there must have nonzero constant term.
enum class DiamondKind { addition, multiplication };

// prod_{f(a)=0} prod_{g(b)=0} (x - (a + b)), each root with multiplicity,
// computed exactly as Res_z(f(z), g(x - z)). Inputs must be monic and
// nonconstant over one finite field; the result is monic of degree
// deg f * deg g.
UnivariatePoly composed_sum_uni(const UnivariatePoly& f, const UnivariatePoly& g);

// prod prod (x - a*b), computed as Res_z(f(z), z^{deg g} g(x/z)). Same
// requirements as the sum; additionally ZeroRoot if f(0) = 0 or g(0) = 0.
UnivariatePoly composed_mul_uni(const UnivariatePoly& f, const UnivariatePoly& g);

UnivariatePoly composed_uni(const UnivariatePoly& f, const UnivariatePoly& g, DiamondKind kind);

// Self-check harness for the irreducibility criterion: f ⋄ g is irreducible
// exactly when f and g are irreducible with coprime degrees. `holds` reports
// the biconditional on the given pair.
struct CriterionReport {
    UnivariatePoly product;
    bool f_irreducible = false;
    bool g_irreducible = false;
    bool degrees_coprime = false;
    bool product_irreducible = false;
    bool holds = false;
};

CriterionReport check_irreducibility_criterion(const UnivariatePoly& f, const UnivariatePoly& g,
                                               DiamondKind kind);

// Full decomposition of an irreducible polynomial under one composition law.
// `factors` composes back to the input and each entry is indecomposable;
// factors are ordered by degree (degrees are pairwise coprime, hence
// distinct). Every other decomposition met during the exhaustive search is
// reported as an alternate together with the unit constants relating it to
// the primary one: alternate.factors[permutation[i]] = (x - units[i]) ⋄
// factors[i], and the units combine to the identity of the law.
struct DecompositionResult {
    std::vector<UnivariatePoly> factors;

    struct Alternate {
        std::vector<UnivariatePoly> factors;
        std::vector<std::size_t> permutation;
        std::vector<FieldElement> units;
    };
    std::vector<Alternate> alternates;
};

// Exhaustive decomposition search. For every splitting deg f = n1 * n2 with
// gcd(n1, n2) = 1 and n1, n2 > 1 it scans all monic degree-n1 candidates over
// F_q and solves for the cofactor by root arithmetic in one fixed copy of
// F_{q^n}; SearchBudgetExceeded when a required scan is larger than `budget`
// candidates. Input must be monic irreducible of degree > 1 (nonzero
// constant term for the multiplication kind).
DecompositionResult decompose_uni(const UnivariatePoly& f, DiamondKind kind,
                                  const Int& budget = Int(1) << 20);

} // namespace compoly
