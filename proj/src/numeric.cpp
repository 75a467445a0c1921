#include "cpcensus/numeric.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

#include "cpcensus/error.hpp"

namespace cpcensus {

Real to_real(Integer const & z)
{
    return Real(z.get_str());
}

Real to_real(Rational const & q)
{
    return to_real(Integer(q.get_num())) / to_real(Integer(q.get_den()));
}

Real real_pi()
{
    return boost::math::constants::pi<Real>();
}

Real parse_real(std::string const & text)
{
    try {
        std::size_t slash = text.find('/');
        if (slash != std::string::npos)
            return to_real(Rational(text));
        return Real(text);
    } catch (std::exception const &) {
        throw Error(Reason::spec_malformed, "not a real number: '" + text + "'");
    }
}

bool is_prime(Integer const & n)
{
    if (n < 2)
        return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n % d == 0)
            return n == d;
    }
    if (n < 289)
        return true;
    // deterministic Miller-Rabin for 64-bit inputs
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
        std::uint64_t r = 1;
        a %= n;
        for (; e; e >>= 1) {
            if (e & 1)
                r = mulmod(r, a);
            a = mulmod(a, a);
        }
        return r;
    };
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

unsigned valuation(Integer n, std::uint64_t q)
{
    if (n == 0)
        throw Error(Reason::invalid_argument, "valuation of zero");
    unsigned v = 0;
    Integer qq(static_cast<unsigned long>(q));
    while (mpz_divisible_p(n.get_mpz_t(), qq.get_mpz_t())) {
        n /= qq;
        ++v;
    }
    return v;
}

std::vector<std::pair<Integer, unsigned>> factor_integer(Integer n)
{
    if (n == 0)
        throw Error(Reason::invalid_argument, "cannot factor zero");
    n = abs(n);
    std::vector<std::pair<Integer, unsigned>> out;
    constexpr unsigned long trial_bound = 10'000'000;
    for (unsigned long d = 2; d <= trial_bound && Integer(d) * d <= n; d += (d == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
                n /= d;
                ++e;
            }
            out.emplace_back(Integer(d), e);
        }
    }
    if (n > 1) {
        if (!is_prime(n))
            throw Error(Reason::guard_exceeded, "cofactor " + n.get_str() + " has no factor below 10^7");
        out.emplace_back(n, 1);
    }
    return out;
}

Integer isqrt(Integer const & n)
{
    if (n < 0)
        throw Error(Reason::invalid_argument, "isqrt of negative number");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(Integer const & n, Integer * root)
{
    if (n < 0)
        return false;
    Integer r = isqrt(n);
    if (root)
        *root = r;
    return r * r == n;
}

std::int64_t isqrt64(std::int64_t n)
{
    if (n <= 0)
        return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (static_cast<i128>(r) * r > n)
        --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_square128(i128 n, i128 & root)
{
    if (n < 0)
        return false;
    if (n < (static_cast<i128>(1) << 62)) {
        root = isqrt64(static_cast<std::int64_t>(n));
        return root * root == n;
    }
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    root = r;
    return r * r == n;
}

std::string to_string(i128 v)
{
    if (v == 0)
        return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    return neg ? "-" + s : s;
}

std::string format_real(Real const & x, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, static_cast<double>(x));
    return buf;
}

} // namespace cpcensus
