#ifndef CPCENSUS_GF_POLY_HPP
#define CPCENSUS_GF_POLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

/*
 * Dense univariate polynomials over the prime field Z/q, q < 2^63.
 * Coefficients ascending, always reduced to [0, q), no trailing zeros;
 * the zero polynomial is the empty vector.
 */
namespace cpcensus::gf {

using Poly = std::vector<std::uint64_t>;

class Field
{
    std::uint64_t q_;

  public:
    explicit Field(std::uint64_t q) : q_(q) {}

    std::uint64_t modulus() const { return q_; }
    std::uint64_t reduce(long long v) const;
    std::uint64_t reduce(mpz_class const & v) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a >= q_ - b ? a - (q_ - b) : a + b; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (q_ - b); }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const
    {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
};

void trim(Poly & f);
int degree(Poly const & f); /* -1 for zero */
bool is_one(Poly const & f);

Poly add(Field const & F, Poly const & f, Poly const & g);
Poly sub(Field const & F, Poly const & f, Poly const & g);
Poly mul(Field const & F, Poly const & f, Poly const & g);
Poly scale(Field const & F, Poly const & f, std::uint64_t c);
/* quotient and remainder; g must be nonzero */
std::pair<Poly, Poly> divmod(Field const & F, Poly const & f, Poly const & g);
Poly rem(Field const & F, Poly const & f, Poly const & g);
Poly monic(Field const & F, Poly const & f);
Poly gcd(Field const & F, Poly f, Poly g); /* monic, or zero */
Poly derivative(Field const & F, Poly const & f);
Poly powmod(Field const & F, Poly base, mpz_class e, Poly const & m);

/* Monic factors (not necessarily distinct inputs) with multiplicities. */
using Factorization = std::vector<std::pair<Poly, unsigned>>;

/* Exhaustive trial division by monic polynomials of degree <= deg/2. */
Factorization factor_exhaustive(Field const & F, Poly f);
/* Square-free, distinct-degree and Cantor-Zassenhaus equal-degree splitting. */
Factorization factor_cantor_zassenhaus(Field const & F, Poly f);

/* Sort by (degree, coefficients) and merge equal factors. */
void canonicalize(Factorization & fac);

} // namespace cpcensus::gf

#endif
