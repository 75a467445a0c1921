#include "gf_poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace cpcensus::gf {

std::uint64_t Field::reduce(long long v) const
{
    long long r = v % static_cast<long long>(q_);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(q_) : r);
}

std::uint64_t Field::reduce(mpz_class const & v) const
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), q_);
    return r.get_ui();
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const
{
    std::uint64_t r = 1 % q_;
    for (; e; e >>= 1) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
    }
    return r;
}

std::uint64_t Field::inv(std::uint64_t a) const
{
    if (a == 0)
        throw std::domain_error("inverse of zero in Z/q");
    return pow(a, q_ - 2);
}

void trim(Poly & f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

int degree(Poly const & f)
{
    return static_cast<int>(f.size()) - 1;
}

bool is_one(Poly const & f)
{
    return f.size() == 1 && f[0] == 1;
}

Poly add(Field const & F, Poly const & f, Poly const & g)
{
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < f.size() ? f[i] : 0, i < g.size() ? g[i] : 0);
    trim(r);
    return r;
}

Poly sub(Field const & F, Poly const & f, Poly const & g)
{
    Poly r(std::max(f.size(), g.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < f.size() ? f[i] : 0, i < g.size() ? g[i] : 0);
    trim(r);
    return r;
}

Poly mul(Field const & F, Poly const & f, Poly const & g)
{
    if (f.empty() || g.empty())
        return {};
    Poly r(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0)
            continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
    }
    trim(r);
    return r;
}

Poly scale(Field const & F, Poly const & f, std::uint64_t c)
{
    Poly r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        r[i] = F.mul(f[i], c);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(Field const & F, Poly const & f, Poly const & g)
{
    if (g.empty())
        throw std::domain_error("polynomial division by zero");
    Poly r = f;
    int dg = degree(g);
    if (degree(r) < dg)
        return {Poly{}, r};
    Poly quo(r.size() - g.size() + 1, 0);
    std::uint64_t lead_inv = F.inv(g.back());
    for (int k = degree(r); k >= dg; --k) {
        std::uint64_t c = F.mul(r[k], lead_inv);
        quo[k - dg] = c;
        if (c == 0)
            continue;
        for (int i = 0; i <= dg; ++i)
            r[k - dg + i] = F.sub(r[k - dg + i], F.mul(c, g[i]));
    }
    trim(r);
    trim(quo);
    return {quo, r};
}

Poly rem(Field const & F, Poly const & f, Poly const & g)
{
    return divmod(F, f, g).second;
}

Poly monic(Field const & F, Poly const & f)
{
    if (f.empty())
        return f;
    return scale(F, f, F.inv(f.back()));
}

Poly gcd(Field const & F, Poly f, Poly g)
{
    while (!g.empty()) {
        Poly r = rem(F, f, g);
        f = std::move(g);
        g = std::move(r);
    }
    return monic(F, f);
}

Poly derivative(Field const & F, Poly const & f)
{
    if (f.size() <= 1)
        return {};
    Poly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        d[i - 1] = F.mul(f[i], i % F.modulus());
    trim(d);
    return d;
}

Poly powmod(Field const & F, Poly base, mpz_class e, Poly const & m)
{
    Poly result = rem(F, Poly{1}, m);
    base = rem(F, base, m);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result = rem(F, mul(F, result, base), m);
        e >>= 1;
        if (e > 0)
            base = rem(F, mul(F, base, base), m);
    }
    return result;
}

namespace {

/* Next monic polynomial of the given degree in lexicographic order; false on wraparound. */
bool next_monic(Poly & f, std::uint64_t q)
{
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        if (++f[i] < q)
            return true;
        f[i] = 0;
    }
    return false;
}

/* Square-free decomposition: f = prod g_i^i, f monic. */
Factorization squarefree(Field const & F, Poly f)
{
    Factorization out;
    std::uint64_t q = F.modulus();
    Poly c = gcd(F, f, derivative(F, f));
    Poly w = divmod(F, f, c).first;
    unsigned i = 1;
    while (!is_one(w)) {
        Poly y = gcd(F, w, c);
        Poly fac = divmod(F, w, y).first;
        if (degree(fac) > 0)
            out.emplace_back(fac, i);
        w = y;
        c = divmod(F, c, y).first;
        ++i;
    }
    if (degree(c) > 0) {
        // c is a q-th power; over the prime field the root just thins coefficients
        Poly root((c.size() - 1) / q + 1, 0);
        for (std::size_t k = 0; k < root.size(); ++k)
            root[k] = c[k * q];
        for (auto & [g, e] : squarefree(F, root))
            out.emplace_back(g, static_cast<unsigned>(e * q));
    }
    return out;
}

/* Splits f (square-free, monic) into products of irreducibles of equal degree. */
std::vector<std::pair<Poly, unsigned>> distinct_degree(Field const & F, Poly f)
{
    std::vector<std::pair<Poly, unsigned>> out;
    mpz_class q(static_cast<unsigned long>(F.modulus()));
    Poly x{0, 1};
    Poly h = rem(F, x, f);
    unsigned d = 1;
    while (degree(f) >= 2 * static_cast<int>(d)) {
        h = powmod(F, h, q, f);
        Poly g = gcd(F, f, sub(F, h, x));
        if (!is_one(g)) {
            out.emplace_back(g, d);
            f = divmod(F, f, g).first;
            h = rem(F, h, f);
        }
        ++d;
    }
    if (degree(f) > 0)
        out.emplace_back(f, static_cast<unsigned>(degree(f)));
    return out;
}

void equal_degree(Field const & F, Poly const & f, unsigned d, std::mt19937_64 & rng, std::vector<Poly> & out)
{
    if (degree(f) == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    std::uint64_t q = F.modulus();
    std::uniform_int_distribution<std::uint64_t> coeff(0, q - 1);
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), q, d);
    for (;;) {
        Poly a(f.size() - 1);
        for (auto & c : a)
            c = coeff(rng);
        trim(a);
        if (degree(a) < 1)
            continue;
        Poly b;
        if (q == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1))
            Poly t = rem(F, a, f);
            b = t;
            for (unsigned i = 1; i < d; ++i) {
                t = rem(F, mul(F, t, t), f);
                b = add(F, b, t);
            }
        } else {
            b = sub(F, powmod(F, a, (qd - 1) / 2, f), Poly{1});
        }
        Poly g = gcd(F, f, b);
        if (degree(g) > 0 && degree(g) < degree(f)) {
            equal_degree(F, g, d, rng, out);
            equal_degree(F, divmod(F, f, g).first, d, rng, out);
            return;
        }
    }
}

} // namespace

void canonicalize(Factorization & fac)
{
    std::sort(fac.begin(), fac.end(), [](auto const & a, auto const & b) {
        if (a.first.size() != b.first.size())
            return a.first.size() < b.first.size();
        return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(), b.first.rend());
    });
    Factorization merged;
    for (auto & [g, e] : fac) {
        if (!merged.empty() && merged.back().first == g)
            merged.back().second += e;
        else
            merged.emplace_back(g, e);
    }
    fac = std::move(merged);
}

Factorization factor_exhaustive(Field const & F, Poly f)
{
    Factorization out;
    f = monic(F, f);
    for (int d = 1; 2 * d <= degree(f); ++d) {
        Poly g(d + 1, 0);
        g[d] = 1;
        do {
            unsigned e = 0;
            for (;;) {
                auto [quo, r] = divmod(F, f, g);
                if (!r.empty())
                    break;
                f = std::move(quo);
                ++e;
            }
            if (e > 0)
                out.emplace_back(g, e);
        } while (2 * d <= degree(f) && next_monic(g, F.modulus()));
    }
    if (degree(f) > 0)
        out.emplace_back(f, 1);
    canonicalize(out);
    return out;
}

Factorization factor_cantor_zassenhaus(Field const & F, Poly f)
{
    Factorization out;
    f = monic(F, f);
    std::mt19937_64 rng(0x5eed0000u + F.modulus());
    for (auto & [sqf, mult] : squarefree(F, f)) {
        for (auto & [block, d] : distinct_degree(F, sqf)) {
            std::vector<Poly> pieces;
            equal_degree(F, block, d, rng, pieces);
            for (auto & g : pieces)
                out.emplace_back(g, mult);
        }
    }
    canonicalize(out);
    return out;
}

} // namespace cpcensus::gf
