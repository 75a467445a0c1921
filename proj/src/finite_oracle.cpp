#include "cpcensus/finite_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <string>

#include "cpcensus/error.hpp"
#include "cpcensus/numeric.hpp"

namespace cpcensus {

namespace {

using i64 = std::int64_t;

i64 md(i64 x, i64 m)
{
    x %= m;
    return x < 0 ? x + m : x;
}

i64 power(std::uint64_t q, unsigned k)
{
    i64 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (static_cast<std::uint64_t>(r) > finite_oracle_guard)
            throw Error(Reason::guard_exceeded, "modulus q^k too large");
        r *= static_cast<i64>(q);
    }
    return r;
}

void guard(double candidates, char const * what)
{
    if (candidates > static_cast<double>(finite_oracle_guard))
        throw Error(Reason::guard_exceeded, std::string(what) + ": more than 1e8 candidates");
}

i64 inverse_mod(i64 a, i64 m)
{
    i64 g = m, x = 0, x1 = 1, r = md(a, m);
    while (r != 0) {
        i64 t = g / r;
        std::tie(g, r) = std::make_pair(r, g - t * r);
        std::tie(x, x1) = std::make_pair(x1, x - t * x1);
    }
    if (g != 1)
        throw std::logic_error("inverse of a non-unit");
    return md(x, m);
}

void check_prime(std::uint64_t q, unsigned k)
{
    if (!is_prime(q))
        throw Error(Reason::invalid_argument, std::to_string(q) + " is not prime");
    if (k == 0)
        throw Error(Reason::invalid_argument, "k must be at least 1");
}

unsigned lift_level(MonicIntPolynomial const & p, std::uint64_t q, unsigned k, FiberKind fiber)
{
    if (fiber == FiberKind::naive)
        return k;
    return k + valuation(discriminant(p), q) + 1;
}

/*
 * Orbits of a finite set of encoded points under a group action.
 * generators: BFS where act(x, i) applies generator i; the orbit is the
 * closure since positive words already exhaust a finite group.
 */
std::vector<std::uint64_t> orbit_sizes(std::vector<std::uint64_t> const & points, std::size_t actions,
                                       std::function<std::uint64_t(std::uint64_t, std::size_t)> const & act,
                                       bool closure)
{
    std::vector<char> seen(points.size(), 0);
    auto index = [&](std::uint64_t key) {
        auto it = std::lower_bound(points.begin(), points.end(), key);
        if (it == points.end() || *it != key)
            throw std::logic_error("group action left the fiber");
        return static_cast<std::size_t>(it - points.begin());
    };
    std::vector<std::uint64_t> sizes;
    for (std::size_t start = 0; start < points.size(); ++start) {
        if (seen[start])
            continue;
        std::uint64_t size = 1;
        seen[start] = 1;
        std::deque<std::size_t> queue{start};
        while (!queue.empty()) {
            std::size_t cur = queue.front();
            queue.pop_front();
            for (std::size_t g = 0; g < actions; ++g) {
                std::size_t nxt = index(act(points[cur], g));
                if (!seen[nxt]) {
                    seen[nxt] = 1;
                    ++size;
                    if (closure)
                        queue.push_back(nxt);
                }
            }
            if (!closure)
                break;
        }
        sizes.push_back(size);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

OrbitCensus summarize(std::uint64_t q, unsigned k, i64 Mk, unsigned L, std::size_t elements,
                      std::vector<std::uint64_t> sizes)
{
    OrbitCensus out;
    out.q = q;
    out.k = k;
    out.modulus = static_cast<std::uint64_t>(Mk);
    out.fiber_level = L;
    out.elements = elements;
    out.orbits = sizes.size();
    out.orbit_sizes = std::move(sizes);
    return out;
}

// ---------- matrices ----------

using Mat = std::vector<i64>;

std::uint64_t encode(Mat const & m, i64 M)
{
    std::uint64_t key = 0;
    for (i64 x : m)
        key = key * static_cast<std::uint64_t>(M) + static_cast<std::uint64_t>(x);
    return key;
}

Mat decode(std::uint64_t key, unsigned n, i64 M)
{
    Mat m(n * n);
    for (std::size_t i = m.size(); i-- > 0;) {
        m[i] = static_cast<i64>(key % static_cast<std::uint64_t>(M));
        key /= static_cast<std::uint64_t>(M);
    }
    return m;
}

Mat matmul(Mat const & a, Mat const & b, unsigned n, i64 M)
{
    Mat c(n * n, 0);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned l = 0; l < n; ++l) {
            i64 ail = a[i * n + l];
            if (ail == 0)
                continue;
            for (unsigned j = 0; j < n; ++j)
                c[i * n + j] = (c[i * n + j] + ail * b[l * n + j]) % M;
        }
    return c;
}

/* Coefficients (s1, ..., sn) of x^n - s1 x^(n-1) + s2 x^(n-2) - ... for n <= 3. */
std::vector<i64> invariants(Mat const & m, unsigned n, i64 M)
{
    if (n == 2)
        return {md(m[0] + m[3], M), md(m[0] * m[3] - m[1] * m[2], M)};
    i64 s1 = m[0] + m[4] + m[8];
    i64 s2 = m[0] * m[4] - m[1] * m[3] + m[0] * m[8] - m[2] * m[6] + m[4] * m[8] - m[5] * m[7];
    i64 s3 = md(m[0] * md(m[4] * m[8] - m[5] * m[7], M) - m[1] * md(m[3] * m[8] - m[5] * m[6], M)
                    + m[2] * md(m[3] * m[7] - m[4] * m[6], M),
                M);
    return {md(s1, M), md(s2, M), s3};
}

std::vector<i64> target_invariants(MonicIntPolynomial const & p, i64 M)
{
    unsigned n = p.degree();
    std::vector<i64> s(n);
    for (unsigned i = 1; i <= n; ++i) {
        // p = x^n + c_{n-1} x^{n-1} + ..., s_i = (-1)^i c_{n-i}
        Integer c = p[n - i];
        if (i % 2 == 1)
            c = -c;
        s[i - 1] = md(static_cast<i64>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(M))), M);
    }
    return s;
}

/* 2x2 fiber at level L reduced mod q^k, solving bc = ae - det for c. */
std::vector<std::uint64_t> matrix_fiber_n2(MonicIntPolynomial const & p, std::uint64_t q, unsigned k, unsigned L)
{
    i64 ML = power(q, L), Mk = power(q, k);
    guard(static_cast<double>(ML) * static_cast<double>(ML), "matrix fiber");
    auto s = target_invariants(p, ML);
    std::vector<std::uint64_t> keys;
    for (i64 a = 0; a < ML; ++a) {
        i64 e = md(s[0] - a, ML);
        i64 rhs = md(a * e - s[1], ML);
        for (i64 b = 0; b < ML; ++b) {
            // q^j = gcd(b, q^L)
            unsigned j = 0;
            i64 bj = b, qj = 1;
            while (j < L && bj % static_cast<i64>(q) == 0) {
                bj /= static_cast<i64>(q);
                qj *= static_cast<i64>(q);
                ++j;
            }
            if (rhs % qj != 0)
                continue;
            i64 Mc = ML / qj;
            i64 c0 = Mc == 1 ? 0 : md((rhs / qj) * inverse_mod(bj, Mc), Mc);
            // c = c0 + Mc t; reduce mod q^k
            i64 step = std::min(Mc, Mk);
            i64 lifts = Mk / step;
            for (i64 t = 0; t < lifts; ++t) {
                Mat m = {a % Mk, b % Mk, md(c0 + t * step, Mk), e % Mk};
                keys.push_back(encode(m, Mk));
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

std::vector<std::uint64_t> matrix_fiber_generic(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                                unsigned L)
{
    unsigned n = p.degree();
    i64 ML = power(q, L), Mk = power(q, k);
    guard(std::pow(static_cast<double>(ML), n * n - 1.0), "matrix fiber");
    auto s = target_invariants(p, ML);
    std::vector<std::uint64_t> keys;
    Mat m(n * n, 0);
    // all entries but the last diagonal one, which the trace fixes
    std::vector<unsigned> free;
    for (unsigned i = 0; i + 1 < n * n; ++i)
        free.push_back(i);
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == free.size()) {
            i64 tr = 0;
            for (unsigned i = 0; i + 1 < n; ++i)
                tr += m[i * n + i];
            m[n * n - 1] = md(s[0] - tr, ML);
            if (invariants(m, n, ML) == s) {
                Mat r(n * n);
                for (unsigned i = 0; i < n * n; ++i)
                    r[i] = m[i] % Mk;
                keys.push_back(encode(r, Mk));
            }
            return;
        }
        for (i64 v = 0; v < ML; ++v) {
            m[free[idx]] = v;
            rec(idx + 1);
        }
    };
    rec(0);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

std::vector<std::uint64_t> matrix_fiber_keys(MonicIntPolynomial const & p, std::uint64_t q, unsigned k, unsigned L)
{
    if (p.degree() == 2)
        return matrix_fiber_n2(p, q, k, L);
    if (p.degree() == 3)
        return matrix_fiber_generic(p, q, k, L);
    throw Error(Reason::unsupported_degree, "finite matrix census supports n = 2, 3");
}

// ---------- division model ----------

std::uint64_t encode(DivisionModel::Elem const & x, i64 M)
{
    auto m = static_cast<std::uint64_t>(M);
    return ((static_cast<std::uint64_t>(x.u[0]) * m + static_cast<std::uint64_t>(x.u[1])) * m
            + static_cast<std::uint64_t>(x.v[0]))
               * m
           + static_cast<std::uint64_t>(x.v[1]);
}

DivisionModel::Elem decode_elem(std::uint64_t key, i64 M)
{
    auto m = static_cast<std::uint64_t>(M);
    DivisionModel::Elem x;
    x.v[1] = static_cast<i64>(key % m);
    key /= m;
    x.v[0] = static_cast<i64>(key % m);
    key /= m;
    x.u[1] = static_cast<i64>(key % m);
    x.u[0] = static_cast<i64>(key / m);
    return x;
}

std::vector<std::uint64_t> division_fiber_keys(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                               unsigned L)
{
    if (p.degree() != 2)
        throw Error(Reason::unsupported_degree, "the division model is quaternionic; p must be quadratic");
    DivisionModel level(q, L);
    i64 ML = level.modulus(), ML1 = ML / static_cast<i64>(q), Mk = power(q, k);
    guard(static_cast<double>(ML) * static_cast<double>(ML), "division fiber");
    i64 t = md(-static_cast<i64>(mpz_fdiv_ui(p[1].get_mpz_t(), static_cast<unsigned long>(ML))), ML);
    i64 n = static_cast<i64>(mpz_fdiv_ui(p[0].get_mpz_t(), static_cast<unsigned long>(ML)));

    // v mod q^(L-1) grouped by norm; q N(v) mod q^L only sees v mod q^(L-1)
    std::vector<std::vector<DivisionModel::W>> by_norm(static_cast<std::size_t>(ML1));
    for (i64 v0 = 0; v0 < ML1; ++v0)
        for (i64 v1 = 0; v1 < ML1; ++v1) {
            i64 nv = md(v0 * v0 + level.g1() * v0 * v1 - level.g0() * v1 * v1, ML1);
            if (k < L) {
                by_norm[nv].push_back({v0 % Mk, v1 % Mk});
            } else {
                for (i64 s0 = 0; s0 < static_cast<i64>(q); ++s0)
                    for (i64 s1 = 0; s1 < static_cast<i64>(q); ++s1)
                        by_norm[nv].push_back({v0 + s0 * ML1, v1 + s1 * ML1});
            }
        }
    for (auto & bucket : by_norm) {
        std::sort(bucket.begin(), bucket.end());
        bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
    }

    std::vector<std::uint64_t> keys;
    for (i64 u0 = 0; u0 < ML; ++u0)
        for (i64 u1 = 0; u1 < ML; ++u1) {
            DivisionModel::W u{u0, u1};
            if (level.w_trace(u) != t)
                continue;
            i64 diff = md(level.w_norm(u) - n, ML);
            if (diff % static_cast<i64>(q) != 0)
                continue;
            for (auto const & v : by_norm[diff / static_cast<i64>(q)])
                keys.push_back(encode(DivisionModel::Elem{{u0 % Mk, u1 % Mk}, v}, Mk));
        }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

} // namespace

// ---------- DivisionModel ----------

DivisionModel::DivisionModel(std::uint64_t q, unsigned k) : q_(q)
{
    check_prime(q, k);
    M_ = power(q, k);
    if (q == 2) {
        g1_ = -1;
        g0_ = -1;
    } else {
        i64 r = 2;
        // Euler's criterion for the least non-residue
        auto is_residue = [&](i64 a) {
            i64 e = static_cast<i64>((q - 1) / 2), base = a % static_cast<i64>(q), acc = 1;
            while (e > 0) {
                if (e & 1)
                    acc = acc * base % static_cast<i64>(q);
                base = base * base % static_cast<i64>(q);
                e >>= 1;
            }
            return acc == 1;
        };
        while (is_residue(r))
            ++r;
        g1_ = 0;
        g0_ = r;
    }
}

DivisionModel::W DivisionModel::w_mul(W const & a, W const & b) const
{
    i64 hi = a[1] * b[1] % M_;
    return {md(a[0] * b[0] + g0_ * hi, M_), md(a[0] * b[1] + a[1] * b[0] + g1_ * hi, M_)};
}

DivisionModel::W DivisionModel::w_sigma(W const & a) const
{
    // y -> g1 - y
    return {md(a[0] + g1_ * a[1], M_), md(-a[1], M_)};
}

std::int64_t DivisionModel::w_trace(W const & a) const
{
    return md(2 * a[0] + g1_ * a[1], M_);
}

std::int64_t DivisionModel::w_norm(W const & a) const
{
    return md(a[0] * a[0] + g1_ * a[0] * a[1] - g0_ * a[1] * a[1], M_);
}

bool DivisionModel::w_is_unit(W const & a) const
{
    return w_norm(a) % static_cast<i64>(q_) != 0;
}

DivisionModel::Elem DivisionModel::mul(Elem const & x, Elem const & y) const
{
    W qsv = w_sigma(x.v);
    qsv = {qsv[0] * static_cast<i64>(q_) % M_, qsv[1] * static_cast<i64>(q_) % M_};
    W a = w_mul(x.u, y.u), b = w_mul(qsv, y.v), c = w_mul(x.v, y.u), d = w_mul(w_sigma(x.u), y.v);
    return {{md(a[0] + b[0], M_), md(a[1] + b[1], M_)}, {md(c[0] + d[0], M_), md(c[1] + d[1], M_)}};
}

DivisionModel::Elem DivisionModel::one() const
{
    return {{1 % M_, 0}, {0, 0}};
}

DivisionModel::Elem DivisionModel::pi() const
{
    return {{0, 0}, {1 % M_, 0}};
}

std::int64_t DivisionModel::trd(Elem const & x) const
{
    return w_trace(x.u);
}

std::int64_t DivisionModel::nrd(Elem const & x) const
{
    return md(w_norm(x.u) - static_cast<i64>(q_) * w_norm(x.v), M_);
}

bool DivisionModel::is_unit(Elem const & x) const
{
    return w_is_unit(x.u);
}

DivisionModel::Elem DivisionModel::inverse(Elem const & x) const
{
    // the adjugate of [[u, q s(v)], [v, s(u)]] is the element (s(u), -v)
    i64 ninv = inverse_mod(nrd(x), M_);
    W su = w_sigma(x.u);
    return {{su[0] * ninv % M_, su[1] * ninv % M_}, {md(-x.v[0] * ninv, M_), md(-x.v[1] * ninv, M_)}};
}

DivisionModel::Elem DivisionModel::reduce(Elem const & x) const
{
    return {{md(x.u[0], M_), md(x.u[1], M_)}, {md(x.v[0], M_), md(x.v[1], M_)}};
}

// ---------- censuses ----------

std::vector<std::vector<std::int64_t>> matrix_fiber(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                                    FiberKind fiber)
{
    check_prime(q, k);
    i64 Mk = power(q, k);
    std::vector<std::vector<std::int64_t>> out;
    for (auto key : matrix_fiber_keys(p, q, k, lift_level(p, q, k, fiber)))
        out.push_back(decode(key, p.degree(), Mk));
    return out;
}

OrbitCensus matrix_conjugacy_census_mod(MonicIntPolynomial const & p, std::uint64_t q, unsigned k, FiberKind fiber,
                                        OrbitStrategy strategy)
{
    check_prime(q, k);
    unsigned n = p.degree();
    unsigned L = lift_level(p, q, k, fiber);
    i64 Mk = power(q, k);
    auto points = matrix_fiber_keys(p, q, k, L);

    // (g, g^-1) pairs
    std::vector<std::pair<Mat, Mat>> group;
    auto identity = [&] {
        Mat m(n * n, 0);
        for (unsigned i = 0; i < n; ++i)
            m[i * n + i] = 1 % Mk;
        return m;
    };
    bool closure = strategy == OrbitStrategy::generators;
    if (closure) {
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                Mat e = identity(), einv = identity();
                e[i * n + j] = 1 % Mk;
                einv[i * n + j] = md(-1, Mk);
                group.emplace_back(e, einv);
            }
        for (i64 u = 1; u < Mk; ++u) {
            if (u % static_cast<i64>(q) == 0)
                continue;
            Mat d = identity(), dinv = identity();
            d[0] = u;
            dinv[0] = inverse_mod(u, Mk);
            group.emplace_back(d, dinv);
        }
    } else {
        if (n != 2)
            throw Error(Reason::unsupported_degree, "full GL sweep is implemented for n = 2");
        guard(std::pow(static_cast<double>(Mk), 4), "GL_2 sweep");
        for (i64 a = 0; a < Mk; ++a)
            for (i64 b = 0; b < Mk; ++b)
                for (i64 c = 0; c < Mk; ++c)
                    for (i64 d = 0; d < Mk; ++d) {
                        i64 det = md(a * d - b * c, Mk);
                        if (det % static_cast<i64>(q) == 0)
                            continue;
                        i64 di = inverse_mod(det, Mk);
                        group.push_back({{a, b, c, d}, {d * di % Mk, md(-b * di, Mk), md(-c * di, Mk), a * di % Mk}});
                    }
    }
    guard(static_cast<double>(group.size()) * static_cast<double>(closure ? points.size() : 1), "orbit closure");
    auto act = [&](std::uint64_t key, std::size_t g) {
        Mat x = decode(key, n, Mk);
        return encode(matmul(matmul(group[g].first, x, n, Mk), group[g].second, n, Mk), Mk);
    };
    OrbitCensus out = summarize(q, k, Mk, L, points.size(), orbit_sizes(points, group.size(), act, closure));
    if (fiber == FiberKind::lifted)
        out.lift_stable = matrix_fiber_keys(p, q, k, L + 1) == points;
    return out;
}

std::vector<DivisionModel::Elem> division_fiber(MonicIntPolynomial const & p, std::uint64_t q, unsigned k,
                                                FiberKind fiber)
{
    check_prime(q, k);
    i64 Mk = power(q, k);
    std::vector<DivisionModel::Elem> out;
    for (auto key : division_fiber_keys(p, q, k, lift_level(p, q, k, fiber)))
        out.push_back(decode_elem(key, Mk));
    return out;
}

OrbitCensus division_orbit_census_mod(MonicIntPolynomial const & p, std::uint64_t q, unsigned k, FiberKind fiber,
                                      OrbitStrategy strategy)
{
    check_prime(q, k);
    DivisionModel model(q, k);
    i64 Mk = model.modulus();
    unsigned L = lift_level(p, q, k, fiber);
    auto points = division_fiber_keys(p, q, k, L);

    using Elem = DivisionModel::Elem;
    std::vector<std::pair<Elem, Elem>> group;
    bool closure = strategy == OrbitStrategy::generators;
    if (closure) {
        // (u, 0) and (1, v) generate: (u, v) = (u, 0)(1, s(u)^-1 v)
        for (i64 a = 0; a < Mk; ++a)
            for (i64 b = 0; b < Mk; ++b) {
                Elem du{{a, b}, {0, 0}};
                if (model.is_unit(du))
                    group.emplace_back(du, model.inverse(du));
                Elem tv{{1 % Mk, 0}, {a, b}};
                group.emplace_back(tv, model.inverse(tv));
            }
    } else {
        guard(std::pow(static_cast<double>(Mk), 4), "unit sweep");
        for (i64 a = 0; a < Mk; ++a)
            for (i64 b = 0; b < Mk; ++b) {
                if (!model.w_is_unit({a, b}))
                    continue;
                for (i64 c = 0; c < Mk; ++c)
                    for (i64 d = 0; d < Mk; ++d) {
                        Elem g{{a, b}, {c, d}};
                        group.emplace_back(g, model.inverse(g));
                    }
            }
    }
    guard(static_cast<double>(group.size()) * static_cast<double>(closure ? points.size() : 1), "orbit closure");
    auto act = [&](std::uint64_t key, std::size_t g) {
        Elem x = decode_elem(key, Mk);
        return encode(model.mul(model.mul(group[g].first, x), group[g].second), Mk);
    };
    OrbitCensus out = summarize(q, k, Mk, L, points.size(), orbit_sizes(points, group.size(), act, closure));
    if (fiber == FiberKind::lifted)
        out.lift_stable = division_fiber_keys(p, q, k, L + 1) == points;
    return out;
}

} // namespace cpcensus
