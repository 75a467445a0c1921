#ifndef CPCENSUS_TESTS_ORACLES_HPP
#define CPCENSUS_TESTS_ORACLES_HPP

/*
 * Brute-force reference computations used only by the tests. Nothing here
 * shares code with the library paths it checks.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

/* Durand-Kerner roots of a monic polynomial with (small) integer coefficients. */
inline std::vector<std::complex<long double>> roots(std::vector<long> const & coeffs)
{
    std::size_t n = coeffs.size() - 1;
    std::vector<std::complex<long double>> z(n);
    std::complex<long double> seed(0.4L, 0.9L);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = std::pow(seed, static_cast<long double>(i));
    auto eval = [&](std::complex<long double> x) {
        std::complex<long double> acc = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;)
            acc = acc * x + static_cast<long double>(coeffs[k]);
        return acc;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<long double> den = 1;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            z[i] -= eval(z[i]) / den;
        }
    }
    return z;
}

/* prod_{i<j} (r_i - r_j)^2 rounded to the nearest integer */
inline long long discriminant_by_roots(std::vector<long> const & coeffs)
{
    auto z = roots(coeffs);
    std::complex<long double> d = 1;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            d *= (z[i] - z[j]) * (z[i] - z[j]);
    return std::llround(d.real());
}

inline unsigned real_roots_numeric(std::vector<long> const & coeffs)
{
    unsigned count = 0;
    for (auto const & r : roots(coeffs))
        if (std::fabs(r.imag()) < 1e-9L)
            ++count;
    return count;
}

/* Number of roots of p in Z/q by direct evaluation. */
inline unsigned roots_mod(std::vector<long> const & coeffs, long q)
{
    unsigned count = 0;
    for (long x = 0; x < q; ++x) {
        long acc = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;)
            acc = ((acc * x + coeffs[k]) % q + q) % q;
        if (acc == 0)
            ++count;
    }
    return count;
}

/*
 * All 2x2 integer matrices with trace t, determinant d and
 * a^2 + b^2 + c^2 + e^2 <= T2, by a four-fold box loop.
 */
inline long long box_census_2x2(long t, long d, long long T2)
{
    long R = static_cast<long>(std::sqrt(static_cast<double>(T2))) + 1;
    long long count = 0;
    for (long a = -R; a <= R; ++a)
        for (long b = -R; b <= R; ++b)
            for (long c = -R; c <= R; ++c)
                for (long e = -R; e <= R; ++e)
                    if (a + e == t && a * e - b * c == d
                        && static_cast<long long>(a) * a + b * b + c * c + e * e <= T2)
                        ++count;
    return count;
}

/* Characteristic polynomial coefficients of a 3x3 integer matrix: x^3 - s1 x^2 + s2 x - s3. */
inline std::array<long long, 3> charpoly3(std::array<long, 9> const & m)
{
    long long s1 = m[0] + m[4] + m[8];
    long long s2 = static_cast<long long>(m[0]) * m[4] - static_cast<long long>(m[1]) * m[3]
                   + static_cast<long long>(m[0]) * m[8] - static_cast<long long>(m[2]) * m[6]
                   + static_cast<long long>(m[4]) * m[8] - static_cast<long long>(m[5]) * m[7];
    long long s3 = static_cast<long long>(m[0]) * (static_cast<long long>(m[4]) * m[8] - static_cast<long long>(m[5]) * m[7])
                   - static_cast<long long>(m[1]) * (static_cast<long long>(m[3]) * m[8] - static_cast<long long>(m[5]) * m[6])
                   + static_cast<long long>(m[2]) * (static_cast<long long>(m[3]) * m[7] - static_cast<long long>(m[4]) * m[6]);
    return {s1, s2, s3};
}

/* 9-loop box census of 3x3 integer matrices with given (s1, s2, s3) and squared norm <= T2. */
inline long long box_census_3x3(std::array<long long, 3> target, long long T2)
{
    long R = static_cast<long>(std::sqrt(static_cast<double>(T2)));
    long long count = 0;
    std::array<long, 9> m{};
    auto rec = [&](auto & self, int k, long long used) -> void {
        if (k == 9) {
            if (charpoly3(m) == target)
                ++count;
            return;
        }
        for (long v = -R; v <= R; ++v) {
            long long nu = used + static_cast<long long>(v) * v;
            if (nu > T2)
                continue;
            m[k] = v;
            self(self, k + 1, nu);
        }
    };
    rec(rec, 0, 0);
    return count;
}

/*
 * Rank-4 box census in a quaternion order of (a, b): basis rows are the
 * standard coordinates (1, i, j, ij) of the order basis. The norm comes
 * from an explicit 2x2 real matrix; ties are accepted within 1e-9.
 */
inline long long box_census_quaternion(long a, long b, std::array<std::array<long double, 4>, 4> const & basis,
                                       long trace, long norm, long double T, long R)
{
    long double sa = std::sqrt(static_cast<long double>(a > 0 ? a : b));
    long long count = 0;
    for (long x0 = -R; x0 <= R; ++x0)
        for (long x1 = -R; x1 <= R; ++x1)
            for (long x2 = -R; x2 <= R; ++x2)
                for (long x3 = -R; x3 <= R; ++x3) {
                    long double z[4];
                    long x[4] = {x0, x1, x2, x3};
                    for (int c = 0; c < 4; ++c) {
                        z[c] = 0;
                        for (int k = 0; k < 4; ++k)
                            z[c] += x[k] * basis[k][c];
                    }
                    long double trd = 2 * z[0];
                    long double nrd = z[0] * z[0] - a * z[1] * z[1] - b * z[2] * z[2] + static_cast<long double>(a) * b * z[3] * z[3];
                    if (std::fabs(trd - trace) > 1e-9L || std::fabs(nrd - norm) > 1e-9L)
                        continue;
                    long double m[2][2];
                    if (a > 0) {
                        // 1, i, j, ij -> I, diag(s,-s), [[0,1],[b,0]], [[0,s],[-b s,0]]
                        m[0][0] = z[0] + sa * z[1];
                        m[1][1] = z[0] - sa * z[1];
                        m[0][1] = z[2] + sa * z[3];
                        m[1][0] = b * z[2] - b * sa * z[3];
                    } else {
                        // 1, i, j, ij -> I, [[0,1],[a,0]], diag(s,-s), [[0,-s],[a s,0]]
                        m[0][0] = z[0] + sa * z[2];
                        m[1][1] = z[0] - sa * z[2];
                        m[0][1] = z[1] - sa * z[3];
                        m[1][0] = a * z[1] + a * sa * z[3];
                    }
                    long double n2 = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
                    if (n2 <= T * T + 1e-9L)
                        ++count;
                }
    return count;
}

} // namespace oracle

#endif
