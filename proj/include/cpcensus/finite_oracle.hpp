#ifndef CPCENSUS_FINITE_ORACLE_HPP
#define CPCENSUS_FINITE_ORACLE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "cpcensus/poly.hpp"

namespace cpcensus {

/*
 * Orbit censuses over finite quotients Z/q^k. Exhaustive and slow by
 * design; used to check the local orbit counts, not by the CLI.
 */

enum class OrbitStrategy {
    generators, /* breadth-first closure under a generating set */
    full_sweep, /* conjugate each representative by every unit */
};

/*
 * Which elements mod q^k are counted. naive: charpoly = p mod q^k.
 * lifted: reductions mod q^k of solutions mod q^L with L = k + v_q(disc) + 1,
 * i.e. the image of the q-adic solution set once Hensel lifting has settled.
 */
enum class FiberKind { naive, lifted };

struct OrbitCensus
{
    std::uint64_t q = 0;
    unsigned k = 0;
    std::uint64_t modulus = 0;
    unsigned fiber_level = 0; /* L; equals k for the naive fiber */
    bool lift_stable = true;  /* lifted fiber unchanged at level L + 1 */
    std::uint64_t elements = 0;
    std::uint64_t orbits = 0;
    std::vector<std::uint64_t> orbit_sizes; /* ascending */
};

/* Candidates enumerated by any census are capped here (Error(guard_exceeded)). */
inline constexpr std::uint64_t finite_oracle_guard = 100'000'000;

/* Conjugation orbits of n x n matrices over Z/q^k with charpoly p. */
OrbitCensus matrix_conjugacy_census_mod(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                        FiberKind fiber = FiberKind::naive,
                                        OrbitStrategy strategy = OrbitStrategy::generators);

/*
 * The local division algebra of invariant 1/2 over Z_q, reduced mod q^k:
 * pairs (u, v) over W = Z[y]/(g(y), q^k), W unramified quadratic, standing for
 * [[u, q sigma(v)], [v, sigma(u)]]. g = y^2 - r with r the least non-residue
 * for odd q, and y^2 + y + 1 for q = 2.
 */
class DivisionModel
{
  public:
    using W = std::array<std::int64_t, 2>; /* c0 + c1 y */
    struct Elem
    {
        W u, v;
        bool operator==(Elem const &) const = default;
    };

    DivisionModel(std::uint64_t q, unsigned k);

    std::uint64_t q() const { return q_; }
    std::int64_t modulus() const { return M_; }
    /* y^2 = g1 y + g0 */
    std::int64_t g0() const { return g0_; }
    std::int64_t g1() const { return g1_; }

    W w_mul(W const & a, W const & b) const;
    W w_sigma(W const & a) const;
    std::int64_t w_trace(W const & a) const;
    std::int64_t w_norm(W const & a) const;
    bool w_is_unit(W const & a) const;

    Elem mul(Elem const & x, Elem const & y) const;
    Elem one() const;
    Elem pi() const;
    std::int64_t trd(Elem const & x) const;
    std::int64_t nrd(Elem const & x) const;
    bool is_unit(Elem const & x) const;
    Elem inverse(Elem const & x) const; /* x must be a unit */
    Elem reduce(Elem const & x) const;

  private:
    std::uint64_t q_;
    std::int64_t M_;
    std::int64_t g0_, g1_;
};

/* Conjugation orbits of model elements with reduced charpoly p, under the model units. */
OrbitCensus division_orbit_census_mod(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                      FiberKind fiber = FiberKind::lifted,
                                      OrbitStrategy strategy = OrbitStrategy::generators);

/* Elements of the fiber used by the census above, for property tests. */
std::vector<DivisionModel::Elem> division_fiber(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                                FiberKind fiber);
std::vector<std::vector<std::int64_t>> matrix_fiber(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                                    FiberKind fiber);

} // namespace cpcensus

#endif
