#ifndef CPCENSUS_NUMBER_FIELD_HPP
#define CPCENSUS_NUMBER_FIELD_HPP

#include <string>

#include "cpcensus/numeric.hpp"
#include "cpcensus/poly.hpp"

namespace cpcensus {

enum class Provenance { computed, fixture };

/*
 * Invariants of K = Q[x]/(p). r1 + 2 r2 = n, w = 2 whenever r1 > 0,
 * R = 1 when the unit rank r1 + r2 - 1 is zero.
 */
struct FieldInvariants
{
    unsigned degree = 0;
    unsigned r1 = 0;
    unsigned r2 = 0;
    unsigned w = 2;
    Integer d;
    Integer h;
    Real R;
    Provenance provenance = Provenance::computed;
};

/* The user-typed record from the problem spec; fields are not yet trusted. */
struct InvariantsFixture
{
    long r1 = 0;
    long r2 = 0;
    long w = 0;
    Integer d;
    Integer h;
    Real R;
};

/*
 * Degree-2 path. Requires p irreducible with Z[x]/(p) integrally closed
 * (d_K = disc p fundamental); Error(unsupported_degree) for other degrees.
 */
FieldInvariants compute_invariants_quadratic(MonicIntPolynomial const & p);

/*
 * Degree >= 3 path: recomputes r1 (Sturm), d (discriminant) and the
 * consistency rules, trusts h and R. Error(fixture_mismatch) names the
 * failing field.
 */
FieldInvariants load_invariants_fixture(InvariantsFixture const & fixture, MonicIntPolynomial const & p);

/* Residue of the Dedekind zeta function at s = 1: 2^r1 (2 pi)^r2 h R / (w sqrt|d|). */
Real zeta_residue(FieldInvariants const & inv);

namespace quadratic {

/* Fundamental unit (x + y sqrt d)/2 > 1 of the real quadratic field of discriminant d > 0. */
struct Unit
{
    Integer x;
    Integer y;
    int norm; /* +1 or -1 */

    Real value(Integer const & d) const;
};

bool is_fundamental_discriminant(Integer const & d);

/* Continued fraction of (d mod 2 + sqrt d)/2 up to the first convergent of unit norm. */
Unit fundamental_unit(Integer const & d);

/* Reduced positive definite primitive forms of discriminant d < 0. */
Integer class_number_by_forms(Integer const & d);

/*
 * Classes of primitive integral ideals of norm up to the Minkowski bound,
 * compared through principality of I * conj(J). Works for both signs of d.
 */
Integer class_number_by_ideals(Integer const & d);

} // namespace quadratic

} // namespace cpcensus

#endif
