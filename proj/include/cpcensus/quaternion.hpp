#ifndef CPCENSUS_QUATERNION_HPP
#define CPCENSUS_QUATERNION_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "cpcensus/numeric.hpp"
#include "cpcensus/poly.hpp"

namespace cpcensus {

/* Coordinates in 1, i, j, ij of B = (a, b): i^2 = a, j^2 = b, ij = -ji. */
using QuatCoords = std::array<Rational, 4>;

template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

/* Row-major 2x2 real matrix. */
using Mat2 = std::array<Real, 4>;

struct QuaternionSpec
{
    Integer a;
    Integer b;
    std::array<QuatCoords, 4> basis;
};

enum class AlgebraKind { split, quaternion };

struct AlgebraSpec
{
    unsigned degree = 2;
    AlgebraKind kind = AlgebraKind::split;
    QuaternionSpec quaternion; /* meaningful for the quaternion kind only */
};

inline constexpr std::uint64_t infinite_place = 0;

/* (a, b)_q; q = infinite_place selects the real place. */
int hilbert_symbol(Integer const & a, Integer const & b, std::uint64_t q);

/* Finite primes where (a, b) is a division algebra. Error(definite_algebra) if ramified at infinity. */
std::vector<std::uint64_t> ramified_set(Integer const & a, Integer const & b);

QuatCoords quat_mul(Integer const & a, Integer const & b, QuatCoords const & x, QuatCoords const & y);
QuatCoords quat_conj(QuatCoords const & x);
Rational quat_trd(QuatCoords const & x);
Rational quat_nrd(Integer const & a, Integer const & b, QuatCoords const & x);

/*
 * Checks 1 in the lattice, closure under products, integrality of trd and
 * nrd, and maximality (reduced discriminant equal to the product of S).
 * Returns the reduced discriminant.
 */
Integer verify_order(QuaternionSpec const & spec);

/* Images of the order basis under the real embedding. */
std::array<Mat2, 4> real_embedding(QuaternionSpec const & spec);

/* Order element with integer coordinates x in the order basis. */
QuatCoords to_standard(QuaternionSpec const & spec, std::array<Integer, 4> const & x);

/* x^2 - trd(x) x + nrd(x). */
MonicIntPolynomial reduced_charpoly(QuaternionSpec const & spec, std::array<Integer, 4> const & x);

/* G[k][l] = <iota(e_k), iota(e_l)> under the entrywise inner product; asserted positive definite. */
Mat4<Real> frobenius_gram(QuaternionSpec const & spec);

/*
 * The same Gram matrix held exactly as G = rational + sqrt(s) * irrational,
 * where s is the positive structure constant used by the embedding.
 */
struct ExactGram
{
    Integer s;
    Mat4<Rational> rational;
    Mat4<Rational> irrational;

    bool is_rational() const;
    Mat4<Real> numeric() const;
};

ExactGram exact_frobenius_gram(QuaternionSpec const & spec);

/*
 * Everything the census needs about a verified maximal order.
 * trd(x) = sum trd[k] x_k and 2 nrd(x) = x^T nrd2 x, both integral.
 */
struct QuaternionOrder
{
    QuaternionSpec spec;
    std::vector<std::uint64_t> ramified;
    Integer reduced_discriminant;
    std::array<Integer, 4> trd;
    Mat4<Integer> nrd2;
    ExactGram gram;
};

QuaternionOrder make_quaternion_order(QuaternionSpec const & spec);

} // namespace cpcensus

#endif
