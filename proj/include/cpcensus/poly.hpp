#ifndef CPCENSUS_POLY_HPP
#define CPCENSUS_POLY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpcensus/numeric.hpp"

namespace cpcensus {

/*
 * Monic polynomial of degree >= 2 with exact integer coefficients,
 * stored ascending: coeffs()[i] is the coefficient of x^i, coeffs().back() == 1.
 */
class MonicIntPolynomial
{
    std::vector<Integer> coeffs_;

  public:
    /* Throws Error(invalid_argument) if not monic or degree < 2. */
    explicit MonicIntPolynomial(std::vector<Integer> coeffs);
    static MonicIntPolynomial from_ints(std::vector<long> const & coeffs);

    unsigned degree() const { return static_cast<unsigned>(coeffs_.size() - 1); }
    std::vector<Integer> const & coeffs() const { return coeffs_; }
    Integer const & operator[](std::size_t i) const { return coeffs_[i]; }

    Integer evaluate(Integer const & x) const;
    Rational evaluate(Rational const & x) const;

    /* (-1)^n p(-x), the characteristic polynomial of -a when p is that of a */
    MonicIntPolynomial negated_argument() const;

    std::string to_string(char var = 'x') const;

    bool operator==(MonicIntPolynomial const &) const = default;
};

/* Monic irreducible factor over Z/q with its multiplicity. */
struct ModQFactor
{
    std::vector<std::uint64_t> coeffs; /* ascending, monic, entries in [0, q) */
    unsigned multiplicity;

    unsigned degree() const { return static_cast<unsigned>(coeffs.size() - 1); }
    bool operator==(ModQFactor const &) const = default;
};

struct FactorizationModQ
{
    std::uint64_t q;
    std::vector<ModQFactor> factors; /* sorted by (degree, coefficients) */

    /* sum of multiplicity * degree */
    unsigned total_degree() const;
};

Integer discriminant(MonicIntPolynomial const & p);

enum class FactorMethod { automatic, exhaustive, cantor_zassenhaus };

/*
 * Complete factorization of p mod q into monic irreducibles. `automatic`
 * uses exhaustive trial while q * #{monic of degree <= n/2} < 10^6, and
 * distinct/equal-degree splitting above that. The product of the result is
 * checked against p mod q on every call.
 */
FactorizationModQ factor_mod_q(MonicIntPolynomial const & p, std::uint64_t q,
                               FactorMethod method = FactorMethod::automatic);

/* Dedekind criterion: is Z[x]/(p) maximal at q. */
bool dedekind_maximality_test(MonicIntPolynomial const & p, std::uint64_t q);

/*
 * Irreducibility over Q. Degrees 2 and 3 are decided exactly (no integer
 * root). For degree >= 4 a witness prime w with p irreducible mod w is
 * required: the supplied one is verified, otherwise primes below 200 are
 * tried; Error(irreducibility_unverified) if none works.
 */
bool is_irreducible_over_Q(MonicIntPolynomial const & p, std::optional<std::uint64_t> witness = {});

/* Number of distinct real roots, by a Sturm chain over Q. */
unsigned real_root_count(MonicIntPolynomial const & p);

/* Sturm-based count of distinct roots in (lo, hi]. */
unsigned real_root_count_in(MonicIntPolynomial const & p, Rational const & lo, Rational const & hi);

} // namespace cpcensus

#endif
