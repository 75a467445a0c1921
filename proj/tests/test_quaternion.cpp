#include <random>

#include "doctest.h"

#include "cpcensus/error.hpp"
#include "cpcensus/quaternion.hpp"

using namespace cpcensus;

namespace {

Rational half()
{
    return Rational(1) / 2;
}

QuaternionSpec maximal_m1_3()
{
    Rational h = half();
    return {-1, 3, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {h, h, h, h}}}};
}

/* M_2(Z) inside (1, 1) via matrix units. */
QuaternionSpec split_model()
{
    Rational h = half();
    return {1, 1, {{{h, h, 0, 0}, {0, 0, h, h}, {0, 0, h, -h}, {h, -h, 0, 0}}}};
}

Reason reason_of(QuaternionSpec const & s)
{
    try {
        verify_order(s);
    } catch (Error const & e) {
        return e.reason();
    }
    return Reason::invalid_argument;
}

double to_d(Real const & x)
{
    return static_cast<double>(x);
}

Mat2 mul2(Mat2 const & x, Mat2 const & y)
{
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

Mat2 image_of(std::array<Mat2, 4> const & img, std::array<Integer, 4> const & x)
{
    Mat2 m{0, 0, 0, 0};
    for (int k = 0; k < 4; ++k)
        for (int e = 0; e < 4; ++e)
            m[e] += to_real(x[k]) * img[k][e];
    return m;
}

} // namespace

TEST_CASE("hilbert symbol examples")
{
    for (std::uint64_t q : {0ul, 2ul, 3ul, 5ul, 7ul})
        CHECK(hilbert_symbol(1, 7, q) == 1);
    CHECK(hilbert_symbol(-1, -1, infinite_place) == -1);
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, 3, 2) == -1);
    CHECK(hilbert_symbol(-1, 3, 3) == -1);
    CHECK(hilbert_symbol(-1, 3, 5) == 1);
    CHECK(hilbert_symbol(2, 5, 5) == -1);
    CHECK(hilbert_symbol(5, 5, 5) == 1); // (5, -1)_5 and -1 is a square mod 5
}

TEST_CASE("hilbert symbol: product formula and bilinearity")
{
    std::mt19937 rng(314);
    std::uniform_int_distribution<long> dist(-60, 60);
    auto draw = [&] {
        long v = 0;
        while (v == 0)
            v = dist(rng);
        return Integer(v);
    };
    auto places = [] {
        std::vector<std::uint64_t> out{infinite_place, 2};
        for (std::uint64_t q = 3; q <= 61; q += 2)
            if (is_prime(q))
                out.push_back(q);
        return out;
    };
    for (int trial = 0; trial < 100; ++trial) {
        Integer a = draw(), b = draw(), c = draw();
        int prod = 1;
        for (auto q : places()) {
            int s = hilbert_symbol(a, b, q);
            prod *= s;
            CHECK(s == hilbert_symbol(b, a, q));
            CHECK(hilbert_symbol(a * c, b, q) == s * hilbert_symbol(c, b, q));
            CHECK(hilbert_symbol(a, -a, q) == 1);
            if (a != 1)
                CHECK(hilbert_symbol(a, 1 - a, q) == 1);
            CHECK(hilbert_symbol(a, b * b, q) == 1);
        }
        INFO("a = " << a << ", b = " << b);
        CHECK(prod == 1);
    }
}

TEST_CASE("ramified sets")
{
    CHECK(ramified_set(-1, 3) == std::vector<std::uint64_t>{2, 3});
    CHECK(ramified_set(1, 7).empty());
    CHECK(ramified_set(-1, 7) == std::vector<std::uint64_t>{2, 7});
    CHECK(ramified_set(2, 5) == std::vector<std::uint64_t>{2, 5});
    try {
        ramified_set(-1, -1);
        FAIL("definite algebra accepted");
    } catch (Error const & e) {
        CHECK(e.reason() == Reason::definite_algebra);
    }
}

TEST_CASE("order verification")
{
    CHECK(verify_order(maximal_m1_3()) == 6);
    CHECK(verify_order(split_model()) == 1);

    QuaternionSpec plain{-1, 3, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}};
    CHECK(reason_of(plain) == Reason::order_not_maximal);
    try {
        verify_order(plain);
    } catch (Error const & e) {
        CHECK(std::string(e.what()).find("12") != std::string::npos);
    }

    Rational h = half();
    QuaternionSpec no_one{-1, 3, {{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}};
    CHECK(reason_of(no_one) == Reason::order_not_ring);
    QuaternionSpec not_integral{-1, 3, {{{1, 0, 0, 0}, {0, h, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}};
    CHECK(reason_of(not_integral) == Reason::order_not_integral);
    // (1+j)/2 has nrd -1/2
    QuaternionSpec half_j{-1, 3, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {h, 0, h, 0}, {0, 0, 0, 1}}}};
    CHECK(reason_of(half_j) == Reason::order_not_integral);
    // 1, i, j, 2ij: i * j = ij is missing
    QuaternionSpec not_closed{-1, 3, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}}}};
    CHECK(reason_of(not_closed) == Reason::order_not_ring);
    QuaternionSpec dependent{-1, 3, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}, {h, h, h, h}}}};
    CHECK(reason_of(dependent) == Reason::order_not_ring);
    QuaternionSpec definite{-1, -1, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {h, h, h, h}}}};
    CHECK(reason_of(definite) == Reason::definite_algebra);
}

TEST_CASE("accepted orders have reduced discriminant prod S")
{
    // Z + Zi + Zj + Z(1+i+j+ij)/2 style orders for (-1, p) with p = 3 mod 4
    Rational h = half();
    for (long p : {3, 7, 11, 19, 23, 31, 43}) {
        QuaternionSpec s{-1, p, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {h, h, h, h}}}};
        auto S = ramified_set(s.a, s.b);
        Integer prod = 1;
        for (auto q : S)
            prod *= static_cast<unsigned long>(q);
        INFO("p = " << p);
        CHECK(verify_order(s) == prod);
    }
}

TEST_CASE("real embedding respects the relations")
{
    for (auto const & spec : {maximal_m1_3(), split_model(),
                              QuaternionSpec{2, -5, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}}}) {
        QuaternionSpec standard{spec.a, spec.b, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}};
        auto img = real_embedding(standard);
        auto ii = mul2(img[1], img[1]), jj = mul2(img[2], img[2]), ij = mul2(img[1], img[2]),
             ji = mul2(img[2], img[1]);
        for (int e = 0; e < 4; ++e) {
            Real id = (e == 0 || e == 3) ? 1 : 0;
            CHECK(to_d(abs(ii[e] - to_real(spec.a) * id)) < 1e-12);
            CHECK(to_d(abs(jj[e] - to_real(spec.b) * id)) < 1e-12);
            CHECK(to_d(abs(ij[e] + ji[e])) < 1e-12);
            CHECK(to_d(abs(ij[e] - img[3][e])) < 1e-12);
            CHECK(to_d(abs(img[0][e] - id)) < 1e-40);
        }
    }
    auto img = real_embedding({-1, 3, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}});
    CHECK(to_d(img[1][1]) == 1.0);
    CHECK(to_d(img[1][2]) == -1.0);
    CHECK(to_d(img[2][0]) == doctest::Approx(std::sqrt(3.0)));
    Mat2 s = image_of(img, {0, 1, 1, 0});
    CHECK(to_d(s[0] * s[3] - s[1] * s[2]) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("reduced characteristic polynomials")
{
    auto spec = maximal_m1_3();
    CHECK(reduced_charpoly(spec, {0, 1, 0, 0}).to_string() == "x^2 + 1");
    CHECK(reduced_charpoly(spec, {0, 0, 0, 1}).to_string() == "x^2 - x - 1");
    CHECK(reduced_charpoly(spec, {5, 0, 0, 0}).to_string() == "x^2 - 10x + 25");

    auto img = real_embedding(spec);
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<Integer, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
        auto p = reduced_charpoly(spec, x);
        Mat2 m = image_of(img, x);
        CHECK(to_d(abs(to_real(Integer(-p[1])) - (m[0] + m[3]))) < 1e-8);
        CHECK(to_d(abs(to_real(p[0]) - (m[0] * m[3] - m[1] * m[2]))) < 1e-8);
    }
}

TEST_CASE("reduced charpoly is conjugation invariant under order units")
{
    auto spec = maximal_m1_3();
    auto order = make_quaternion_order(spec);
    std::vector<std::array<Integer, 4>> units;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c)
                for (long d = -3; d <= 3; ++d) {
                    std::array<Integer, 4> u{a, b, c, d};
                    auto n = quat_nrd(spec.a, spec.b, to_standard(spec, u));
                    if (n == 1 || n == -1)
                        units.push_back(u);
                }
    REQUIRE(units.size() > 10);

    std::mt19937 rng(77);
    std::uniform_int_distribution<long> dist(-6, 6);
    for (int trial = 0; trial < 150; ++trial) {
        auto const & u = units[rng() % units.size()];
        std::array<Integer, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
        auto zu = to_standard(spec, u), zx = to_standard(spec, x);
        Rational n = quat_nrd(spec.a, spec.b, zu);
        auto uinv = quat_conj(zu);
        for (auto & c : uinv)
            c /= n;
        auto conj = quat_mul(spec.a, spec.b, quat_mul(spec.a, spec.b, zu, zx), uinv);
        CHECK(quat_trd(conj) == quat_trd(zx));
        CHECK(quat_nrd(spec.a, spec.b, conj) == quat_nrd(spec.a, spec.b, zx));
    }
    (void)order;
}

TEST_CASE("order forms")
{
    auto order = make_quaternion_order(maximal_m1_3());
    CHECK(order.reduced_discriminant == 6);
    CHECK(order.ramified == std::vector<std::uint64_t>{2, 3});
    CHECK(order.trd == std::array<Integer, 4>{2, 0, 0, 1});
    std::mt19937 rng(8);
    std::uniform_int_distribution<long> dist(-20, 20);
    for (int trial = 0; trial < 100; ++trial) {
        std::array<Integer, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
        auto z = to_standard(order.spec, x);
        Integer t = 0, n2 = 0;
        for (int k = 0; k < 4; ++k) {
            t += order.trd[k] * x[k];
            for (int l = 0; l < 4; ++l)
                n2 += x[k] * order.nrd2[k][l] * x[l];
        }
        CHECK(Rational(t) == quat_trd(z));
        CHECK(Rational(n2) == 2 * quat_nrd(order.spec.a, order.spec.b, z));
    }
}

TEST_CASE("Frobenius Gram matrices")
{
    auto split = frobenius_gram(split_model());
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            CHECK(to_d(abs(split[k][l] - Real(k == l ? 1 : 0))) < 1e-40);
    auto exact_split = exact_frobenius_gram(split_model());
    CHECK(exact_split.is_rational());
    CHECK(exact_split.rational[0][0] == 1);
    CHECK(exact_split.rational[0][1] == 0);

    auto spec = maximal_m1_3();
    auto g = frobenius_gram(spec);
    CHECK(to_d(g[1][1]) == doctest::Approx(2.0).epsilon(1e-40));
    auto ex = exact_frobenius_gram(spec);
    CHECK(ex.is_rational()); // a = -1 makes the cross term vanish
    CHECK(ex.rational[1][1] == 2);
    auto num = ex.numeric();
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            CHECK(to_d(abs(num[k][l] - g[k][l])) < 1e-40);
            CHECK(g[k][l] == g[l][k]);
        }

    // an irrational case: i -> diag(sqrt 2, -sqrt 2) with b = -5 leaves a sqrt 2 cross term
    QuaternionSpec irr{2, -5, {{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}}};
    auto ei = exact_frobenius_gram(irr);
    CHECK_FALSE(ei.is_rational());
    CHECK(ei.s == 2);
    auto gi = frobenius_gram(irr);
    auto ni = ei.numeric();
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            CHECK(to_d(abs(ni[k][l] - gi[k][l])) < 1e-40);

    // x^T G x equals the Frobenius norm of the image; positive on nonzero vectors
    auto img = real_embedding(spec);
    std::mt19937 rng(21);
    std::uniform_int_distribution<long> dist(-12, 12);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<Integer, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
        Real quad = 0;
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l)
                quad += to_real(x[k]) * g[k][l] * to_real(x[l]);
        Mat2 m = image_of(img, x);
        Real direct = m[0] * m[0] + m[1] * m[1] + m[2] * m[2] + m[3] * m[3];
        CHECK(to_d(abs(quad - direct)) < 1e-8);
        if (x != std::array<Integer, 4>{0, 0, 0, 0})
            CHECK(quad > 0);
    }

    // simultaneous permutation of the basis
    auto permuted = spec;
    std::swap(permuted.basis[1], permuted.basis[3]);
    auto gp = frobenius_gram(permuted);
    int perm[4] = {0, 3, 2, 1};
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            CHECK(to_d(abs(gp[k][l] - g[perm[k]][perm[l]])) < 1e-40);
}
