#include "cpcensus/constant.hpp"

#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "cpcensus/error.hpp"

namespace cpcensus {

namespace {

constexpr unsigned em_cutoff = 30; /* terms summed directly */
constexpr unsigned em_order = 20;  /* Bernoulli corrections */

/* B_0 .. B_n by the Akiyama-Tanigawa recurrence. */
std::vector<Rational> bernoulli_numbers(unsigned n)
{
    std::vector<Rational> a(n + 1), out(n + 1);
    for (unsigned m = 0; m <= n; ++m) {
        a[m] = Rational(1, m + 1);
        a[m].canonicalize();
        for (unsigned j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
        out[m] = a[0];
    }
    // the recurrence yields B_1 = +1/2; only even indices are used
    return out;
}

/* B_{2j} / (2j)! for j = 1..em_order, computed once. */
std::vector<Real> const & bernoulli_weights()
{
    static std::vector<Real> const weights = [] {
        auto B = bernoulli_numbers(2 * em_order);
        std::vector<Real> w;
        Integer fact = 1;
        for (unsigned k = 1; k <= 2 * em_order; ++k) {
            fact *= k;
            if (k % 2 == 0)
                w.push_back(to_real(Rational(B[k] / Rational(fact))));
        }
        return w;
    }();
    return weights;
}

} // namespace

Real zeta(Real const & s)
{
    if (s <= 1)
        throw Error(Reason::invalid_argument, "zeta needs s > 1");
    Real N = em_cutoff;
    Real sum = 0;
    for (unsigned k = 1; k < em_cutoff; ++k)
        sum += pow(Real(k), -s);
    Real Ns = pow(N, -s);
    sum += N * Ns / (s - 1) + Ns / 2;
    // sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * N^(-s-2j+1)
    Real rising = s;
    Real power = Ns / N;
    auto const & w = bernoulli_weights();
    for (unsigned j = 1; j <= em_order; ++j) {
        sum += w[j - 1] * rising * power;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        power /= N * N;
    }
    return sum;
}

Real lambda_fn(Real const & s)
{
    if (s <= Real(1) / 2)
        throw Error(Reason::invalid_argument, "lambda_fn needs s > 1/2");
    return pow(real_pi(), -s) * boost::math::tgamma(s) * zeta(2 * s);
}

Real unit_ball_volume(unsigned m)
{
    if (m == 0)
        throw Error(Reason::invalid_argument, "unit ball dimension must be positive");
    Real half_m = Real(m) / 2;
    return pow(real_pi(), half_m) / boost::math::tgamma(half_m + 1);
}

Real orthogonal_group_volume(unsigned n)
{
    if (n == 0)
        throw Error(Reason::invalid_argument, "O(n) needs n >= 1");
    Real value = pow(Real(2), n) * pow(real_pi(), Real(n * (n + 1)) / 4);
    for (unsigned i = 1; i <= n; ++i)
        value /= boost::math::tgamma(Real(i) / 2);
    return value;
}

AsymptoticConstant assemble_constant(FieldInvariants const & inv, std::vector<LocalProfile> const & profiles,
                                     unsigned n)
{
    if (n < 2)
        throw Error(Reason::invalid_argument, "degree must be at least 2");
    AsymptoticConstant out;
    out.exponent = n * (n - 1) / 2;
    Real product = 1;
    for (auto const & prof : profiles) {
        if (!prof.is_division_prime)
            continue;
        if (!prof.feasible())
            throw Error(Reason::infeasible_division_prime,
                        "p is reducible over Q_" + std::to_string(prof.q) + " at a division prime; the census is empty");
        out.corrections.emplace_back(prof.q, *prof.correction_factor);
        product *= *prof.correction_factor;
    }
    out.zeta_residue = zeta_residue(inv);
    out.omega = unit_ball_volume(out.exponent);
    out.lambda_product = 1;
    for (unsigned i = 2; i <= n; ++i)
        out.lambda_product *= lambda_fn(Real(i) / 2);
    out.C = product * out.zeta_residue * out.omega / out.lambda_product;
    return out;
}

} // namespace cpcensus
