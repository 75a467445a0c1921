#ifndef CPCENSUS_LOCAL_ANALYSIS_HPP
#define CPCENSUS_LOCAL_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cpcensus/numeric.hpp"
#include "cpcensus/poly.hpp"
#include "cpcensus/quaternion.hpp"

namespace cpcensus {

struct RamificationPair
{
    unsigned e;
    unsigned f;

    bool operator==(RamificationPair const &) const = default;
};

/*
 * Per-prime data. orbit_count and correction_factor are set for division
 * primes that are feasible; split_density for primes outside S.
 */
struct LocalProfile
{
    std::uint64_t q = 0;
    std::vector<RamificationPair> pairs;
    bool is_division_prime = false;
    bool irreducible_over_Qq = false;
    std::optional<unsigned> orbit_count;
    std::optional<Real> correction_factor;
    std::optional<Real> split_density;

    bool feasible() const { return !is_division_prime || irreducible_over_Qq; }
};

/* (e_i, f_i) read from the factorization mod q; Error(not_integrally_closed) if Z[x]/(p) is not maximal at q. */
std::vector<RamificationPair> ramification_data(MonicIntPolynomial const & p, std::uint64_t q);

/* Ramified primes of the algebra: empty for the split kind. */
std::vector<std::uint64_t> division_primes(AlgebraSpec const & spec);

bool local_feasibility(MonicIntPolynomial const & p, AlgebraSpec const & spec, std::uint64_t q);

unsigned division_orbit_count(unsigned n, unsigned e);

/* n / (e prod_{i=1}^{n-1} (1 - q^-i)) */
Real division_correction_factor(unsigned n, std::uint64_t q, unsigned e);

/* (1 - 1/q) / prod_P (1 - 1/NP): the q-factor of zeta_K / zeta at s = 1. */
Rational euler_factor_ratio(std::vector<RamificationPair> const & pairs, std::uint64_t q);

/* euler_factor_ratio times sl_local_measure(q, n). */
Real split_local_density(MonicIntPolynomial const & p, std::uint64_t q, unsigned n);

/* prod_{i=2}^{n} (1 - q^-i) */
Real sl_local_measure(std::uint64_t q, unsigned n);

/* Product of sl_local_measure over primes q <= Q. */
Real sl_measure_product(unsigned n, std::uint64_t Q);

/* Product of euler_factor_ratio over primes q <= Q. */
Real partial_euler_product(MonicIntPolynomial const & p, std::uint64_t Q);

LocalProfile local_profile(MonicIntPolynomial const & p, std::vector<std::uint64_t> const & S, std::uint64_t q);

/* Profiles for the primes in S and the primes dividing disc p, in increasing order. */
std::vector<LocalProfile> local_profiles(MonicIntPolynomial const & p, AlgebraSpec const & spec);

} // namespace cpcensus

#endif
