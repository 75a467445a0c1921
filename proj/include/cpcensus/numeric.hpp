#ifndef CPCENSUS_NUMERIC_HPP
#define CPCENSUS_NUMERIC_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

namespace cpcensus {

using Integer = mpz_class;
using Rational = mpq_class;
/* 50 decimal digits; everything user-facing is rounded to 12 or fewer. */
using Real = boost::multiprecision::cpp_bin_float_50;

Real to_real(Integer const & z);
Real to_real(Rational const & q);
Real real_pi();

/* Decimal text to Real; throws Error(spec_malformed) on bad input. */
Real parse_real(std::string const & text);

bool is_prime(Integer const & n);
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/* q-adic valuation of a nonzero integer. */
unsigned valuation(Integer n, std::uint64_t q);

/*
 * Prime factorization of |n| (n != 0) by trial division up to 10^7 followed
 * by a primality test on the cofactor. Throws Error(guard_exceeded) if a
 * composite cofactor without small factors remains.
 */
std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n);

/* floor(sqrt(n)) for n >= 0 */
Integer isqrt(Integer const & n);
bool is_square(Integer const & n, Integer * root = nullptr);

/* Signed 128-bit helpers used by the census inner loops. */
using i128 = __int128;
std::int64_t isqrt64(std::int64_t n);
bool is_square128(i128 n, i128 & root);

std::string to_string(i128 v);

/* Round a Real to `digits` significant digits in %g-style notation. */
std::string format_real(Real const & x, int digits);

} // namespace cpcensus

#endif
