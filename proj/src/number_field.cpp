#include "cpcensus/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cpcensus/error.hpp"

namespace cpcensus {

namespace quadratic {

namespace {

/* Element x + y*omega of the maximal order, omega = (delta + sqrt d)/2. */
struct Elt
{
    Integer x, y;
};

struct Ring
{
    Integer d;
    Integer delta;  /* trace of omega, d mod 2 */
    Integer nomega; /* norm of omega, (delta - d)/4 */

    explicit Ring(Integer const & disc) : d(disc)
    {
        delta = (d % 2 == 0) ? 0 : 1;
        nomega = (delta - d) / 4;
    }

    Elt mul(Elt const & a, Elt const & b) const
    {
        return {a.x * b.x - a.y * b.y * nomega, a.x * b.y + a.y * b.x + delta * a.y * b.y};
    }

    Elt conj(Elt const & a) const { return {a.x + a.y * delta, -a.y}; }
};

/* Z-lattice a Z + (b + c omega) Z in Hermite normal form, 0 <= b < a. */
struct Ideal
{
    Integer a, b, c;

    Integer norm() const { return a * c; }
};

Ideal hnf(std::vector<Elt> gens)
{
    // Euclid on the omega-coordinate, then gcd of the leftover rational parts
    for (;;) {
        auto pivot = gens.end();
        for (auto it = gens.begin(); it != gens.end(); ++it)
            if (it->y != 0 && (pivot == gens.end() || abs(it->y) < abs(pivot->y)))
                pivot = it;
        if (pivot == gens.end())
            throw std::logic_error("hnf: lattice of rank < 2");
        bool reduced = true;
        for (auto it = gens.begin(); it != gens.end(); ++it) {
            if (it == pivot || it->y == 0)
                continue;
            Integer qt;
            mpz_fdiv_q(qt.get_mpz_t(), it->y.get_mpz_t(), pivot->y.get_mpz_t());
            it->x -= qt * pivot->x;
            it->y -= qt * pivot->y;
            if (it->y != 0)
                reduced = false;
        }
        if (reduced) {
            Elt p = *pivot;
            if (p.y < 0) {
                p.x = -p.x;
                p.y = -p.y;
            }
            Integer a = 0;
            for (auto const & g : gens)
                if (g.y == 0)
                    mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), g.x.get_mpz_t());
            if (a == 0)
                throw std::logic_error("hnf: lattice of rank < 2");
            Integer b;
            mpz_fdiv_r(b.get_mpz_t(), p.x.get_mpz_t(), a.get_mpz_t());
            return {a, b, p.y};
        }
    }
}

Ideal product(Ring const & R, Ideal const & I, Ideal const & J)
{
    Elt i1{I.a, 0}, i2{I.b, I.c}, j1{J.a, 0}, j2{J.b, J.c};
    return hnf({R.mul(i1, j1), R.mul(i1, j2), R.mul(i2, j1), R.mul(i2, j2)});
}

Ideal conjugate(Ring const & R, Ideal const & I)
{
    return hnf({Elt{I.a, 0}, R.conj(Elt{I.b, I.c}), Elt{I.a * R.delta, -I.a}});
}

bool contains(Ideal const & I, Integer const & x, Integer const & y)
{
    if (y % I.c != 0)
        return false;
    Integer rest = x - (y / I.c) * I.b;
    return rest % I.a == 0;
}

/*
 * Is I principal: some x + y omega in I with |N| = N(I). For d > 0 a
 * generator exists with |alpha|, |alpha'| <= sqrt(N eps), hence
 * |y| <= 2 sqrt(N eps / d); for d < 0, |y| <= 2 sqrt(N / |d|).
 */
bool is_principal(Ring const & R, Ideal const & I, Real const & eps)
{
    Integer N = I.norm();
    Real bound = 2 * sqrt(to_real(N) * eps / to_real(Integer(abs(R.d))));
    Integer ymax(static_cast<unsigned long>(std::floor(static_cast<double>(bound))) + 1);
    for (Integer y = -ymax; y <= ymax; y += 1) {
        if (y % I.c != 0)
            continue;
        for (int sign : {1, -1}) {
            Integer disc = R.d * y * y + 4 * sign * N;
            Integer s;
            if (!is_square(disc, &s))
                continue;
            for (Integer const & root : {s, Integer(-s)}) {
                Integer twice = -R.delta * y + root;
                if (twice % 2 != 0)
                    continue;
                if (contains(I, twice / 2, y))
                    return true;
            }
        }
    }
    return false;
}

} // namespace

Real Unit::value(Integer const & d) const
{
    return (to_real(x) + to_real(y) * sqrt(to_real(d))) / 2;
}

bool is_fundamental_discriminant(Integer const & d)
{
    if (d == 0 || d == 1)
        return false;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
    if (r == 1) {
        for (auto const & [prime, e] : factor_integer(d))
            if (e > 1)
                return false;
        return true;
    }
    if (r != 0)
        return false;
    Integer m = d / 4;
    Integer mr;
    mpz_fdiv_r_ui(mr.get_mpz_t(), m.get_mpz_t(), 4);
    if (mr != 2 && mr != 3)
        return false;
    for (auto const & [prime, e] : factor_integer(m))
        if (e > 1)
            return false;
    return true;
}

Unit fundamental_unit(Integer const & d)
{
    if (d <= 0 || !is_fundamental_discriminant(d))
        throw Error(Reason::invalid_argument, "fundamental_unit needs a positive fundamental discriminant");
    Integer s = isqrt(d);
    Integer delta = (d % 2 == 0) ? 0 : 1;
    Integer P = delta, Q = 2;
    Integer A_prev = 1, A_prev2 = 0, B_prev = 0, B_prev2 = 1;
    for (;;) {
        Integer a;
        Integer num = P + s;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        Integer A = a * A_prev + A_prev2;
        Integer B = a * B_prev + B_prev2;
        // A - B * conj(omega) = (2A - B delta + B sqrt d) / 2
        Integer x = 2 * A - B * delta;
        Integer norm4 = x * x - d * B * B;
        if (norm4 == 4 || norm4 == -4)
            return {x, B, norm4 > 0 ? 1 : -1};
        A_prev2 = A_prev;
        A_prev = A;
        B_prev2 = B_prev;
        B_prev = B;
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
}

Integer class_number_by_forms(Integer const & d)
{
    if (d >= 0)
        throw Error(Reason::invalid_argument, "reduced-form count needs d < 0");
    Integer count = 0;
    Integer amax = isqrt(Integer(-d / 3)) + 1;
    for (Integer a = 1; a <= amax; a += 1) {
        for (Integer b = -a + 1; b <= a; b += 1) {
            Integer num = b * b - d;
            if (num % (4 * a) != 0)
                continue;
            Integer c = num / (4 * a);
            if (c < a)
                continue;
            if (a == c && b < 0)
                continue;
            Integer g = gcd(gcd(a, b), c);
            if (g == 1)
                count += 1;
        }
    }
    return count;
}

Integer class_number_by_ideals(Integer const & d)
{
    if (!is_fundamental_discriminant(d))
        throw Error(Reason::invalid_argument, "class_number_by_ideals needs a fundamental discriminant");
    Ring R(d);
    Real sd = sqrt(to_real(Integer(abs(d))));
    Real eps = 1;
    Real bound;
    if (d > 0) {
        eps = fundamental_unit(d).value(d);
        bound = sd / 2;
    } else {
        bound = 2 * sd / real_pi();
    }
    auto amax = static_cast<unsigned long>(std::floor(static_cast<double>(bound)));

    std::vector<Ideal> ideals;
    for (unsigned long a = 1; a <= std::max(1ul, amax); ++a) {
        for (unsigned long b = 0; b < a; ++b) {
            Integer bb(b);
            Integer n = bb * bb + bb * R.delta + R.nomega;
            if (n % a == 0)
                ideals.push_back({Integer(a), bb, Integer(1)});
        }
    }
    std::vector<Ideal> reps;
    for (auto const & I : ideals) {
        bool known = false;
        for (auto const & J : reps) {
            if (is_principal(R, product(R, I, conjugate(R, J)), eps)) {
                known = true;
                break;
            }
        }
        if (!known)
            reps.push_back(I);
    }
    return Integer(static_cast<unsigned long>(reps.size()));
}

} // namespace quadratic

FieldInvariants compute_invariants_quadratic(MonicIntPolynomial const & p)
{
    if (p.degree() != 2)
        throw Error(Reason::unsupported_degree,
                    "invariants are computed for quadratics only; supply field_invariants for degree "
                        + std::to_string(p.degree()));
    if (!is_irreducible_over_Q(p))
        throw Error(Reason::reducible_polynomial, p.to_string() + " is reducible over Q");
    Integer d = discriminant(p);
    for (auto const & [prime, e] : factor_integer(d)) {
        if (e >= 2 && !dedekind_maximality_test(p, prime.get_ui()))
            throw Error(Reason::not_integrally_closed,
                        "Z[x]/(" + p.to_string() + ") is not maximal at " + prime.get_str());
    }

    FieldInvariants inv;
    inv.degree = 2;
    inv.d = d;
    inv.provenance = Provenance::computed;
    if (d > 0) {
        inv.r1 = 2;
        inv.r2 = 0;
        inv.w = 2;
        inv.R = log(quadratic::fundamental_unit(d).value(d));
        inv.h = quadratic::class_number_by_ideals(d);
    } else {
        inv.r1 = 0;
        inv.r2 = 1;
        inv.w = d == -3 ? 6 : d == -4 ? 4 : 2;
        inv.R = 1;
        inv.h = quadratic::class_number_by_forms(d);
    }
    return inv;
}

FieldInvariants load_invariants_fixture(InvariantsFixture const & fx, MonicIntPolynomial const & p)
{
    unsigned n = p.degree();
    if (n < 3)
        throw Error(Reason::invalid_argument, "quadratic invariants are computed, not loaded");
    auto reject = [](std::string const & what) { throw Error(Reason::fixture_mismatch, what); };

    long r1 = static_cast<long>(real_root_count(p));
    if (fx.r1 != r1)
        reject("r1 mismatch: fixture says " + std::to_string(fx.r1) + ", Sturm count is " + std::to_string(r1));
    if (fx.r1 + 2 * fx.r2 != static_cast<long>(n))
        reject("r2 mismatch: r1 + 2 r2 must equal " + std::to_string(n));
    Integer d = discriminant(p);
    if (fx.d != d)
        reject("d mismatch: fixture says " + fx.d.get_str() + ", discriminant is " + d.get_str());
    if (fx.r1 > 0 && fx.w != 2)
        reject("w must be 2 when r1>0");
    if (fx.w < 2 || fx.w % 2 != 0)
        reject("w must be an even integer >= 2");
    if (fx.h < 1)
        reject("h must be a positive integer");
    if (fx.R <= 0)
        reject("R must be positive");
    if (fx.r1 + fx.r2 == 1 && fx.R != 1)
        reject("R must be 1 when the unit rank is zero");

    FieldInvariants inv;
    inv.degree = n;
    inv.r1 = static_cast<unsigned>(fx.r1);
    inv.r2 = static_cast<unsigned>(fx.r2);
    inv.w = static_cast<unsigned>(fx.w);
    inv.d = d;
    inv.h = fx.h;
    inv.R = fx.R;
    inv.provenance = Provenance::fixture;
    return inv;
}

Real zeta_residue(FieldInvariants const & inv)
{
    Real value = pow(Real(2), inv.r1) * pow(2 * real_pi(), inv.r2) * to_real(inv.h) * inv.R;
    return value / (Real(inv.w) * sqrt(to_real(Integer(abs(inv.d)))));
}

} // namespace cpcensus
