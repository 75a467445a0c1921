#include "cpcensus/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cpcensus/error.hpp"
#include "gf_poly.hpp"

namespace cpcensus {

namespace {

using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

void trim(IntPoly & f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

IntPoly mul(IntPoly const & f, IntPoly const & g)
{
    if (f.empty() || g.empty())
        return {};
    IntPoly r(f.size() + g.size() - 1, Integer(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            r[i + j] += f[i] * g[j];
    trim(r);
    return r;
}

IntPoly lift(std::vector<std::uint64_t> const & g)
{
    IntPoly r;
    r.reserve(g.size());
    for (auto c : g)
        r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

/* Determinant of a square integer matrix, fraction-free Bareiss elimination. */
Integer bareiss_det(std::vector<std::vector<Integer>> m)
{
    std::size_t n = m.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

RatPoly to_rat(IntPoly const & f)
{
    return RatPoly(f.begin(), f.end());
}

void trim(RatPoly & f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

RatPoly rat_rem(RatPoly r, RatPoly const & g)
{
    std::size_t dg = g.size() - 1;
    while (r.size() >= g.size()) {
        Rational c = r.back() / g.back();
        std::size_t shift = r.size() - g.size();
        for (std::size_t i = 0; i <= dg; ++i)
            r[shift + i] -= c * g[i];
        r.pop_back();
        trim(r);
    }
    return r;
}

std::vector<RatPoly> sturm_chain(MonicIntPolynomial const & p)
{
    std::vector<RatPoly> chain;
    chain.push_back(to_rat(p.coeffs()));
    RatPoly d;
    for (std::size_t i = 1; i < p.coeffs().size(); ++i)
        d.push_back(Rational(p[i] * static_cast<unsigned long>(i)));
    chain.push_back(d);
    while (chain.back().size() > 1) {
        RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
        if (r.empty())
            break;
        for (auto & c : r)
            c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_at(RatPoly const & f, Rational const & x)
{
    Rational acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it)
        acc = acc * x + *it;
    return sgn(acc);
}

unsigned sign_changes(std::vector<int> const & signs)
{
    unsigned changes = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

unsigned changes_at(std::vector<RatPoly> const & chain, Rational const & x)
{
    std::vector<int> signs;
    for (auto const & f : chain)
        signs.push_back(sign_at(f, x));
    return sign_changes(signs);
}

/* Integer roots of p, located by Sturm bisection between half-integers. */
void integer_roots(MonicIntPolynomial const & p, std::vector<RatPoly> const & chain,
                   Rational lo, Rational hi, unsigned count_in, std::vector<Integer> & roots)
{
    if (count_in == 0)
        return;
    Rational width = hi - lo;
    if (width == 1) {
        Rational mid = lo + Rational(1, 2);
        Integer k = mid.get_num() / mid.get_den();
        if (p.evaluate(k) == 0)
            roots.push_back(k);
        return;
    }
    Integer half = Integer(width.get_num() / width.get_den()) / 2;
    Rational mid = lo + Rational(half);
    unsigned left = changes_at(chain, lo) - changes_at(chain, mid);
    integer_roots(p, chain, lo, mid, left, roots);
    integer_roots(p, chain, mid, hi, count_in - left, roots);
}

} // namespace

MonicIntPolynomial::MonicIntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.size() < 3)
        throw Error(Reason::invalid_argument, "polynomial degree must be at least 2");
    if (coeffs_.back() != 1)
        throw Error(Reason::invalid_argument, "polynomial must be monic");
}

MonicIntPolynomial MonicIntPolynomial::from_ints(std::vector<long> const & coeffs)
{
    std::vector<Integer> c;
    for (long v : coeffs)
        c.emplace_back(v);
    return MonicIntPolynomial(std::move(c));
}

Integer MonicIntPolynomial::evaluate(Integer const & x) const
{
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Rational MonicIntPolynomial::evaluate(Rational const & x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

MonicIntPolynomial MonicIntPolynomial::negated_argument() const
{
    std::vector<Integer> c = coeffs_;
    unsigned n = degree();
    for (std::size_t i = 0; i < c.size(); ++i)
        if ((n - i) % 2 == 1)
            c[i] = -c[i];
    return MonicIntPolynomial(std::move(c));
}

std::string MonicIntPolynomial::to_string(char var) const
{
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        Integer const & c = coeffs_[k];
        if (c == 0)
            continue;
        Integer mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        if (mag != 1 || k == 0)
            out << mag.get_str();
        if (k >= 1)
            out << var;
        if (k >= 2)
            out << '^' << k;
        first = false;
    }
    return out.str();
}

unsigned FactorizationModQ::total_degree() const
{
    unsigned s = 0;
    for (auto const & f : factors)
        s += f.multiplicity * f.degree();
    return s;
}

Integer discriminant(MonicIntPolynomial const & p)
{
    unsigned n = p.degree();
    std::vector<Integer> dp;
    for (unsigned i = 1; i <= n; ++i)
        dp.push_back(p[i] * i);
    // Sylvester matrix of p (degree n) and p' (degree n-1), size 2n-1
    std::size_t size = 2 * n - 1;
    std::vector<std::vector<Integer>> syl(size, std::vector<Integer>(size, Integer(0)));
    for (unsigned r = 0; r + 1 < n; ++r)
        for (unsigned i = 0; i <= n; ++i)
            syl[r][r + i] = p[n - i];
    for (unsigned r = 0; r < n; ++r)
        for (unsigned i = 0; i < n; ++i)
            syl[n - 1 + r][r + i] = dp[n - 1 - i];
    Integer res = bareiss_det(std::move(syl));
    return (n * (n - 1) / 2) % 2 == 0 ? res : Integer(-res);
}

FactorizationModQ factor_mod_q(MonicIntPolynomial const & p, std::uint64_t q, FactorMethod method)
{
    if (!is_prime(q))
        throw Error(Reason::invalid_argument, std::to_string(q) + " is not prime");
    gf::Field F(q);
    gf::Poly f;
    for (auto const & c : p.coeffs())
        f.push_back(F.reduce(c));
    gf::trim(f);

    if (method == FactorMethod::automatic) {
        // q * (q + q^2 + ... + q^(n/2)) < 10^6
        mpz_class count = 0, qk = 1;
        for (unsigned d = 1; 2 * d <= p.degree(); ++d) {
            qk *= static_cast<unsigned long>(q);
            count += qk;
        }
        method = count * static_cast<unsigned long>(q) < 1'000'000 ? FactorMethod::exhaustive
                                                                   : FactorMethod::cantor_zassenhaus;
    }
    gf::Factorization fac = method == FactorMethod::exhaustive ? gf::factor_exhaustive(F, f)
                                                               : gf::factor_cantor_zassenhaus(F, f);

    FactorizationModQ out{q, {}};
    gf::Poly product{1};
    for (auto & [g, e] : fac) {
        for (unsigned i = 0; i < e; ++i)
            product = gf::mul(F, product, g);
        out.factors.push_back({g, e});
    }
    if (product != f || out.total_degree() != p.degree())
        throw std::logic_error("factor_mod_q: product of factors does not reproduce p mod " + std::to_string(q));
    return out;
}

bool dedekind_maximality_test(MonicIntPolynomial const & p, std::uint64_t q)
{
    FactorizationModQ fac = factor_mod_q(p, q);
    bool repeated = std::any_of(fac.factors.begin(), fac.factors.end(),
                                [](ModQFactor const & f) { return f.multiplicity > 1; });
    if (!repeated)
        return true;

    // F = (p - prod g_i^e_i) / q with lifted g_i; maximal iff no repeated g_i divides F mod q
    IntPoly prod{Integer(1)};
    for (auto const & f : fac.factors)
        for (unsigned i = 0; i < f.multiplicity; ++i)
            prod = mul(prod, lift(f.coeffs));
    IntPoly diff = p.coeffs();
    diff.resize(std::max(diff.size(), prod.size()), Integer(0));
    for (std::size_t i = 0; i < prod.size(); ++i)
        diff[i] -= prod[i];
    gf::Field F(q);
    gf::Poly reduced;
    Integer qq(static_cast<unsigned long>(q));
    for (auto & c : diff) {
        if (!mpz_divisible_p(c.get_mpz_t(), qq.get_mpz_t()))
            throw std::logic_error("dedekind_maximality_test: lifted factorization not congruent to p");
        reduced.push_back(F.reduce(Integer(c / qq)));
    }
    gf::trim(reduced);
    for (auto const & f : fac.factors) {
        if (f.multiplicity > 1 && gf::rem(F, reduced, f.coeffs).empty())
            return false;
    }
    return true;
}

bool is_irreducible_over_Q(MonicIntPolynomial const & p, std::optional<std::uint64_t> witness)
{
    unsigned n = p.degree();
    if (n <= 3) {
        if (discriminant(p) == 0)
            return false;
        Integer bound = 1;
        for (auto const & c : p.coeffs())
            bound = std::max(bound, Integer(abs(c) + 1));
        auto chain = sturm_chain(p);
        Rational lo = Rational(-bound) - Rational(1, 2);
        Rational hi = Rational(bound) + Rational(1, 2);
        std::vector<Integer> roots;
        integer_roots(p, chain, lo, hi, changes_at(chain, lo) - changes_at(chain, hi), roots);
        return roots.empty();
    }
    auto irreducible_mod = [&](std::uint64_t w) {
        auto fac = factor_mod_q(p, w);
        return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
    };
    if (witness) {
        if (!irreducible_mod(*witness))
            throw Error(Reason::irreducibility_unverified,
                        "p is not irreducible mod the certificate prime " + std::to_string(*witness));
        return true;
    }
    for (std::uint64_t w : primes_up_to(200))
        if (irreducible_mod(w))
            return true;
    throw Error(Reason::irreducibility_unverified,
                "degree " + std::to_string(n) + " needs an irreducibility certificate (witness prime)");
}

unsigned real_root_count(MonicIntPolynomial const & p)
{
    auto chain = sturm_chain(p);
    std::vector<int> at_neg, at_pos;
    for (auto const & f : chain) {
        int lead = sgn(f.back());
        int deg = static_cast<int>(f.size()) - 1;
        at_pos.push_back(lead);
        at_neg.push_back(deg % 2 == 0 ? lead : -lead);
    }
    return sign_changes(at_neg) - sign_changes(at_pos);
}

unsigned real_root_count_in(MonicIntPolynomial const & p, Rational const & lo, Rational const & hi)
{
    auto chain = sturm_chain(p);
    return changes_at(chain, lo) - changes_at(chain, hi);
}

} // namespace cpcensus
