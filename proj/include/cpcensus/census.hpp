#ifndef CPCENSUS_CENSUS_HPP
#define CPCENSUS_CENSUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cpcensus/constant.hpp"
#include "cpcensus/numeric.hpp"
#include "cpcensus/poly.hpp"
#include "cpcensus/quaternion.hpp"

namespace cpcensus {

enum class CensusMode { matrix_n2, matrix_generic, quaternion_order };

std::string_view mode_name(CensusMode mode);

/* counts[k] = N(grid[k]); grid strictly increasing. */
struct CensusSeries
{
    std::vector<Rational> grid;
    std::vector<std::uint64_t> counts;
    CensusMode mode = CensusMode::matrix_n2;
};

/* T_max * 2^-k for k = K-1, ..., 0, in increasing order. */
std::vector<Rational> default_grid(Rational const & t_max, unsigned points);

/*
 * Integer 2x2 matrices with charpoly p and Frobenius norm <= T, for every T
 * of the grid in one pass. p must be irreducible.
 */
std::vector<std::uint64_t> matrix_census_n2(MonicIntPolynomial const & p, std::vector<Rational> const & grid,
                                            unsigned threads = 1);
std::uint64_t matrix_census_n2(MonicIntPolynomial const & p, Rational const & T);

/* Branch-and-bound over n x n integer matrices; n = degree of p. */
std::vector<std::uint64_t> matrix_census_generic(MonicIntPolynomial const & p, std::vector<Rational> const & grid,
                                                 unsigned threads = 1);
std::uint64_t matrix_census_generic(MonicIntPolynomial const & p, Rational const & T);

/* Row-major n x n solutions of norm <= T, for symmetry tests. */
std::vector<std::vector<long>> matrix_solutions(MonicIntPolynomial const & p, Rational const & T);

/* Elements of the order with reduced charpoly p and |iota(x)| <= T. */
std::vector<std::uint64_t> order_census_quaternion(QuaternionOrder const & order, MonicIntPolynomial const & p,
                                                   std::vector<Rational> const & grid, unsigned threads = 1);
std::uint64_t order_census_quaternion(QuaternionOrder const & order, MonicIntPolynomial const & p,
                                      Rational const & T);

/* Order coordinates of all solutions of norm <= T. */
std::vector<std::array<long, 4>> order_solutions(QuaternionOrder const & order, MonicIntPolynomial const & p,
                                                 Rational const & T);

struct ConvergenceRow
{
    Rational T;
    std::uint64_t count;
    Real count_over_Tm;
    Real predicted_C;
    Real ratio;
};

/* ratio = N(T) / (C T^m); with no constant (infeasible problem) every real column is 0. */
std::vector<ConvergenceRow> convergence_table(CensusSeries const & series, AsymptoticConstant const * constant,
                                              unsigned exponent);

} // namespace cpcensus

#endif
