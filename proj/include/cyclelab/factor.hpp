#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "cyclelab/poly.hpp"

namespace cyclelab {

struct FactorPower {
    Poly factor;
    int multiplicity;
};

/// Irreducible factorization of a nonzero univariate polynomial (one variable of its ring).
/// Factors are monic; their product with multiplicities equals f up to a nonzero scalar.
/// Over F_p: squarefree decomposition, distinct-degree and equal-degree splitting.
/// Over Q: squarefree decomposition, then Zassenhaus (mod-p factoring, Hensel lifting,
/// recombination). Throws DegreeTooLarge past `degree_bound` (default: Settings).
std::vector<FactorPower> univariate_factor(const Poly& f);
std::vector<FactorPower> univariate_factor(const Poly& f, int degree_bound);

/// Irreducible factorization of a nonzero multivariate polynomial, via Kronecker substitution
/// into one variable, univariate factoring and exhaustive recombination by trial division.
/// Constant polynomials give an empty list. Factors are monic in the grevlex order.
std::vector<FactorPower> factor_poly(const Poly& f);

/// Exact quotient f / g, or nullopt when g does not divide f.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

namespace dense {

// Coefficient vectors, lowest degree first, no trailing zeros (zero polynomial = empty).
using FpPoly = std::vector<std::uint64_t>;
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_rem(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint64_t p);

/// Monic irreducible factors of a monic polynomial over F_p, with multiplicity.
std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f, std::uint64_t p);

/// Irreducible factors of a primitive integer polynomial (primitive, positive leading coefficient).
std::vector<std::pair<ZPoly, int>> z_factor(const ZPoly& f);

/// Resultant of two rational polynomials.
mpq_class q_resultant(const QPoly& a, const QPoly& b);

}  // namespace dense

}  // namespace cyclelab
