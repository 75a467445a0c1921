#include "cpcensus/local_analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "cpcensus/error.hpp"

namespace cpcensus {

namespace {

Rational inverse_power(std::uint64_t q, unsigned k)
{
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), q, k);
    return Rational(Integer(1), den);
}

Rational sl_factor(std::uint64_t q, unsigned n)
{
    Rational acc = 1;
    for (unsigned i = 2; i <= n; ++i)
        acc *= 1 - inverse_power(q, i);
    return acc;
}

} // namespace

std::vector<RamificationPair> ramification_data(MonicIntPolynomial const & p, std::uint64_t q)
{
    if (!dedekind_maximality_test(p, q))
        throw Error(Reason::not_integrally_closed,
                    "Z[x]/(" + p.to_string() + ") is not integrally closed at " + std::to_string(q)
                        + "; local data cannot be read from the factorization mod q");
    std::vector<RamificationPair> out;
    for (auto const & f : factor_mod_q(p, q).factors)
        out.push_back({f.multiplicity, f.degree()});
    return out;
}

std::vector<std::uint64_t> division_primes(AlgebraSpec const & spec)
{
    if (spec.kind == AlgebraKind::split)
        return {};
    return ramified_set(spec.quaternion.a, spec.quaternion.b);
}

bool local_feasibility(MonicIntPolynomial const & p, AlgebraSpec const & spec, std::uint64_t q)
{
    auto S = division_primes(spec);
    if (std::find(S.begin(), S.end(), q) == S.end())
        return true;
    return ramification_data(p, q).size() == 1;
}

unsigned division_orbit_count(unsigned n, unsigned e)
{
    if (e == 0 || n % e != 0)
        throw std::logic_error("ramification index does not divide the degree");
    return n / e;
}

Real division_correction_factor(unsigned n, std::uint64_t q, unsigned e)
{
    Rational den = e;
    for (unsigned i = 1; i + 1 <= n; ++i)
        den *= 1 - inverse_power(q, i);
    return to_real(Rational(Rational(n) / den));
}

Rational euler_factor_ratio(std::vector<RamificationPair> const & pairs, std::uint64_t q)
{
    Rational value = 1 - inverse_power(q, 1);
    for (auto const & pr : pairs)
        value /= 1 - inverse_power(q, pr.f);
    return value;
}

Real split_local_density(MonicIntPolynomial const & p, std::uint64_t q, unsigned n)
{
    return to_real(Rational(euler_factor_ratio(ramification_data(p, q), q) * sl_factor(q, n)));
}

Real sl_local_measure(std::uint64_t q, unsigned n)
{
    return to_real(sl_factor(q, n));
}

Real sl_measure_product(unsigned n, std::uint64_t Q)
{
    if (Q < 2)
        throw Error(Reason::invalid_argument, "prime cutoff must be at least 2");
    Real acc = 1;
    for (auto q : primes_up_to(Q))
        acc *= sl_local_measure(q, n);
    return acc;
}

Real partial_euler_product(MonicIntPolynomial const & p, std::uint64_t Q)
{
    Real acc = 1;
    for (auto q : primes_up_to(Q)) {
        // mod-q splitting is the splitting of q only where Z[x]/(p) is maximal
        std::vector<RamificationPair> pairs;
        for (auto const & f : factor_mod_q(p, q).factors)
            pairs.push_back({f.multiplicity, f.degree()});
        acc *= to_real(euler_factor_ratio(pairs, q));
    }
    return acc;
}

LocalProfile local_profile(MonicIntPolynomial const & p, std::vector<std::uint64_t> const & S, std::uint64_t q)
{
    LocalProfile prof;
    prof.q = q;
    prof.pairs = ramification_data(p, q);
    prof.is_division_prime = std::find(S.begin(), S.end(), q) != S.end();
    prof.irreducible_over_Qq = prof.pairs.size() == 1;
    unsigned n = p.degree();
    if (prof.is_division_prime) {
        if (prof.irreducible_over_Qq) {
            unsigned e = prof.pairs.front().e;
            prof.orbit_count = division_orbit_count(n, e);
            prof.correction_factor = division_correction_factor(n, q, e);
        }
    } else {
        prof.split_density = split_local_density(p, q, n);
    }
    return prof;
}

std::vector<LocalProfile> local_profiles(MonicIntPolynomial const & p, AlgebraSpec const & spec)
{
    auto S = division_primes(spec);
    std::set<std::uint64_t> primes(S.begin(), S.end());
    for (auto const & [prime, e] : factor_integer(discriminant(p)))
        primes.insert(prime.get_ui());
    std::vector<LocalProfile> out;
    for (auto q : primes)
        out.push_back(local_profile(p, S, q));
    return out;
}

} // namespace cpcensus
