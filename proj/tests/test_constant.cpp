#include <cmath>

#include <boost/math/special_functions/zeta.hpp>

#include "doctest.h"

#include "cpcensus/constant.hpp"
#include "cpcensus/error.hpp"

using namespace cpcensus;

namespace {

MonicIntPolynomial P(std::vector<long> c)
{
    return MonicIntPolynomial::from_ints(c);
}

double to_d(Real const & x)
{
    return static_cast<double>(x);
}

double rel(Real const & x, Real const & y)
{
    return to_d(abs(x / y - 1));
}

AlgebraSpec quaternion_alg(long a, long b)
{
    AlgebraSpec s;
    s.kind = AlgebraKind::quaternion;
    s.quaternion.a = a;
    s.quaternion.b = b;
    return s;
}

} // namespace

TEST_CASE("zeta agrees with the Boost implementation")
{
    for (char const * s : {"1.05", "1.5", "2", "2.5", "3", "4", "5.25", "7", "12", "40"}) {
        Real x = parse_real(s);
        INFO("s = " << s);
        CHECK(rel(zeta(x), boost::math::zeta(x)) < 1e-40);
    }
    CHECK_THROWS_AS(zeta(Real(1)), Error);
}

TEST_CASE("lambda at even integers and at 3/2")
{
    Real pi = real_pi();
    CHECK(rel(lambda_fn(Real(1)), pi / 6) < 1e-40);
    CHECK(rel(lambda_fn(Real(2)), pi * pi / 90) < 1e-40);
    CHECK(rel(lambda_fn(Real(3)), 2 * pi * pi * pi / 945) < 1e-40); // Gamma(3) = 2
    Real zeta3 = boost::math::zeta(Real(3));
    CHECK(rel(lambda_fn(Real(3) / 2), zeta3 / (2 * pi)) < 1e-40);
    CHECK(to_d(lambda_fn(Real(3) / 2)) == doctest::Approx(0.1913139).epsilon(1e-6));
    CHECK_THROWS_AS(lambda_fn(Real(1) / 2), Error);
}

TEST_CASE("unit ball and orthogonal group volumes")
{
    Real pi = real_pi();
    CHECK(rel(unit_ball_volume(1), Real(2)) < 1e-45);
    CHECK(rel(unit_ball_volume(2), pi) < 1e-45);
    CHECK(rel(unit_ball_volume(3), 4 * pi / 3) < 1e-45);
    CHECK(rel(unit_ball_volume(6), pi * pi * pi / 6) < 1e-45);
    CHECK(rel(orthogonal_group_volume(1), Real(2)) < 1e-45);
    CHECK(rel(orthogonal_group_volume(2), 4 * pi) < 1e-45);
    CHECK(rel(orthogonal_group_volume(3), 16 * pi * pi) < 1e-45);
}

TEST_CASE("assembled constants")
{
    auto golden = P({-1, -1, 1});
    auto inv = compute_invariants_quadratic(golden);

    auto split = assemble_constant(inv, local_profiles(golden, AlgebraSpec{}), 2);
    CHECK(split.exponent == 1);
    CHECK(split.corrections.empty());
    // 4 log(phi) * 2 / (2 sqrt 5 * pi/6), evaluated in double
    double phi = (1 + std::sqrt(5.0)) / 2;
    double expected = 4 * std::log(phi) * 2 / (2 * std::sqrt(5.0) * (M_PI / 6));
    CHECK(to_d(split.C) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(to_d(split.C) == doctest::Approx(1.644041052).epsilon(1e-9));

    auto quat = assemble_constant(inv, local_profiles(golden, quaternion_alg(-1, 3)), 2);
    REQUIRE(quat.corrections.size() == 2);
    CHECK(quat.corrections[0].first == 2);
    CHECK(quat.corrections[1].first == 3);
    CHECK(rel(quat.C, split.C * 12) < 1e-45);
    CHECK(to_d(quat.C) == doctest::Approx(19.7285).epsilon(1e-5));

    // the displayed form with 2^r1 (2 pi)^r2 / w reduces to 2^(n-1) for totally real n = 2
    Real shah = Real(2) * to_real(inv.h) * inv.R * unit_ball_volume(1) / (sqrt(Real(5)) * lambda_fn(Real(1)));
    CHECK(rel(split.C, shah) < 1e-45);
}

TEST_CASE("assemble_constant is multiplicative and linear")
{
    auto golden = P({-1, -1, 1});
    auto inv = compute_invariants_quadratic(golden);
    auto profiles = local_profiles(golden, quaternion_alg(-1, 3));
    auto base = assemble_constant(inv, profiles, 2);

    auto bumped = profiles;
    for (auto & prof : bumped)
        if (prof.q == 3)
            prof.correction_factor = *prof.correction_factor * Real(7) / 5;
    CHECK(rel(assemble_constant(inv, bumped, 2).C, base.C * Real(7) / 5) < 1e-45);

    auto scaled = inv;
    scaled.h = 2;
    scaled.R = inv.R * 3;
    CHECK(rel(assemble_constant(scaled, profiles, 2).C, base.C * 6) < 1e-45);
}

TEST_CASE("cubic constant and infeasible primes")
{
    auto cubic = P({-2, 0, 0, 1});
    InvariantsFixture fx;
    fx.r1 = 1;
    fx.r2 = 1;
    fx.w = 2;
    fx.d = -108;
    fx.h = 1;
    fx.R = parse_real("1.3473773483293841");
    auto inv = load_invariants_fixture(fx, cubic);
    auto c = assemble_constant(inv, local_profiles(cubic, AlgebraSpec{3}), 3);
    CHECK(c.exponent == 3);
    Real pi = real_pi();
    Real expected = zeta_residue(inv) * (4 * pi / 3) / (lambda_fn(Real(1)) * lambda_fn(Real(3) / 2));
    CHECK(rel(c.C, expected) < 1e-45);

    auto p = P({-2, 0, 1});
    auto bad = local_profiles(p, quaternion_alg(-1, 7));
    try {
        assemble_constant(compute_invariants_quadratic(p), bad, 2);
        FAIL("infeasible division prime accepted");
    } catch (Error const & e) {
        CHECK(e.reason() == Reason::infeasible_division_prime);
        CHECK(exit_code(e.reason()) == 4);
    }
}
