#ifndef CPCENSUS_CONSTANT_HPP
#define CPCENSUS_CONSTANT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cpcensus/local_analysis.hpp"
#include "cpcensus/number_field.hpp"
#include "cpcensus/numeric.hpp"

namespace cpcensus {

/* Riemann zeta for real s > 1 by Euler-Maclaurin summation. */
Real zeta(Real const & s);

/* pi^-s Gamma(s) zeta(2s), s > 1/2. */
Real lambda_fn(Real const & s);

/* Volume of the unit ball in R^m. */
Real unit_ball_volume(unsigned m);

/* 2^n pi^(n(n+1)/4) / prod_{i=1}^{n} Gamma(i/2). */
Real orthogonal_group_volume(unsigned n);

struct AsymptoticConstant
{
    Real C;
    unsigned exponent = 0; /* m = n(n-1)/2 */
    std::vector<std::pair<std::uint64_t, Real>> corrections;
    Real zeta_residue;
    Real omega;          /* unit_ball_volume(m) */
    Real lambda_product; /* prod_{i=2}^{n} lambda_fn(i/2) */
};

/*
 * C = prod corrections * zeta_residue * omega_m / prod Lambda(i/2).
 * Division-prime corrections come from the profiles; an infeasible
 * division prime raises Error(infeasible_division_prime).
 */
AsymptoticConstant assemble_constant(FieldInvariants const & inv, std::vector<LocalProfile> const & profiles,
                                     unsigned n);

} // namespace cpcensus

#endif
