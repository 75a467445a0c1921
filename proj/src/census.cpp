#include "cpcensus/census.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "cpcensus/error.hpp"

namespace cpcensus {

namespace {

using i64 = std::int64_t;

i64 to_i64(Integer const & z, char const * what)
{
    if (!z.fits_slong_p())
        throw Error(Reason::guard_exceeded, std::string(what) + " does not fit in 64 bits");
    return z.get_si();
}

/* Squared grid values, ascending, with exact comparisons. */
class Thresholds
{
    std::vector<Rational> t2_;
    std::vector<i64> floors_;

  public:
    explicit Thresholds(std::vector<Rational> const & grid)
    {
        if (grid.empty())
            throw Error(Reason::invalid_argument, "census grid is empty");
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (grid[k] <= 0 || (k > 0 && grid[k] <= grid[k - 1]))
                throw Error(Reason::invalid_argument, "census grid must be positive and strictly increasing");
            Rational sq = grid[k] * grid[k];
            Integer fl;
            mpz_fdiv_q(fl.get_mpz_t(), sq.get_num_mpz_t(), sq.get_den_mpz_t());
            if (fl > Integer("1000000000000000000"))
                throw Error(Reason::guard_exceeded, "T^2 exceeds 10^18");
            t2_.push_back(sq);
            floors_.push_back(fl.get_si());
        }
    }

    std::size_t size() const { return t2_.size(); }
    i64 max_floor() const { return floors_.back(); }
    Rational const & max_t2() const { return t2_.back(); }

    /* Smallest k with norm2 <= T_k^2, or size() if none. */
    std::size_t first_fit(i64 norm2) const
    {
        return std::lower_bound(floors_.begin(), floors_.end(), norm2) - floors_.begin();
    }

    /* Same for (A + B sqrt s) / L. */
    std::size_t first_fit(Integer const & A, Integer const & B, Integer const & s, Integer const & L) const
    {
        for (std::size_t k = 0; k < t2_.size(); ++k) {
            Integer const & den = t2_[k].get_den();
            Integer X = den * A, Y = den * B, c = L * t2_[k].get_num();
            Integer D = c - X;
            bool fits;
            if (Y == 0)
                fits = D >= 0;
            else if (Y > 0)
                fits = D >= 0 && Y * Y * s <= D * D;
            else
                fits = D >= 0 || Y * Y * s >= D * D;
            if (fits)
                return k;
        }
        return t2_.size();
    }
};

std::vector<std::uint64_t> cumulate(std::vector<std::uint64_t> const & buckets, std::size_t k)
{
    std::vector<std::uint64_t> counts(k, 0);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < k; ++i) {
        acc += buckets[i];
        counts[i] = acc;
    }
    return counts;
}

/*
 * Runs body(v, buckets) for v in [lo, hi], value v going to worker
 * (v - lo) mod threads; per-worker buckets are summed, so the result does
 * not depend on the thread count.
 */
std::vector<std::uint64_t> strided(i64 lo, i64 hi, unsigned threads, std::size_t nb,
                                   std::function<void(i64, std::vector<std::uint64_t> &)> const & body)
{
    threads = std::max(1u, threads);
    std::vector<std::vector<std::uint64_t>> parts(threads, std::vector<std::uint64_t>(nb, 0));
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto work = [&](unsigned tid) {
        try {
            for (i64 v = lo + tid; v <= hi; v += threads)
                body(v, parts[tid]);
        } catch (...) {
            std::lock_guard<std::mutex> guard(failure_lock);
            if (!failure)
                failure = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned tid = 0; tid < threads; ++tid)
            pool.emplace_back(work, tid);
        for (auto & t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    std::vector<std::uint64_t> total(nb, 0);
    for (auto const & part : parts)
        for (std::size_t i = 0; i < nb; ++i)
            total[i] += part[i];
    return total;
}

/* Coefficients of det(xI - M), highest first, by Berkowitz's division-free recurrence. */
std::vector<i128> berkowitz(std::vector<i64> const & M, unsigned n)
{
    std::vector<i128> poly{1};
    std::vector<i128> v, w;
    for (unsigned r = 1; r <= n; ++r) {
        std::vector<i128> t(r + 1, 0);
        t[0] = 1;
        t[1] = -static_cast<i128>(M[(r - 1) * n + (r - 1)]);
        v.assign(r - 1, 0);
        for (unsigned i = 0; i + 1 < r; ++i)
            v[i] = M[i * n + (r - 1)];
        for (unsigned k = 0; k + 2 <= r; ++k) {
            i128 dot = 0;
            for (unsigned i = 0; i + 1 < r; ++i)
                dot += static_cast<i128>(M[(r - 1) * n + i]) * v[i];
            t[k + 2] = -dot;
            w.assign(r - 1, 0);
            for (unsigned i = 0; i + 1 < r; ++i)
                for (unsigned j = 0; j + 1 < r; ++j)
                    w[i] += static_cast<i128>(M[i * n + j]) * v[j];
            v.swap(w);
        }
        std::vector<i128> next(r + 1, 0);
        for (unsigned i = 0; i <= r; ++i)
            for (unsigned j = 0; j <= std::min(i, r - 1); ++j)
                next[i] += t[i - j] * poly[j];
        poly.swap(next);
    }
    return poly;
}

/*
 * Enumerates n x n integer matrices with charpoly p and squared norm
 * <= R2. Free diagonal entries come first (the last one follows from the
 * trace), then the off-diagonal entries except (n-1, 0); that entry enters
 * every charpoly coefficient affinely and is solved for.
 */
class GenericEnumerator
{
    unsigned n_;
    i64 R2_;
    i64 trace_;
    std::vector<i128> target_; /* descending */
    std::vector<std::size_t> offdiag_;
    std::size_t solved_;

  public:
    using Sink = std::function<void(std::vector<i64> const &, i64)>;

    GenericEnumerator(MonicIntPolynomial const & p, i64 R2) : n_(p.degree()), R2_(R2)
    {
        if (n_ > 6)
            throw Error(Reason::unsupported_degree, "matrix census is limited to n <= 6");
        trace_ = -to_i64(p[n_ - 1], "trace");
        for (unsigned i = 0; i <= n_; ++i)
            target_.push_back(static_cast<i128>(to_i64(p[n_ - i], "charpoly coefficient")));
        solved_ = (n_ - 1) * n_;
        for (unsigned i = 0; i < n_; ++i)
            for (unsigned j = 0; j < n_; ++j)
                if (i != j && i * n_ + j != solved_)
                    offdiag_.push_back(i * n_ + j);
    }

    i64 outer_radius() const { return isqrt64(R2_); }

    /* All matrices whose (0,0) entry is a00. */
    void run(i64 a00, Sink const & sink) const
    {
        std::vector<i64> M(n_ * n_, 0);
        i64 used = a00 * a00;
        if (used > R2_)
            return;
        M[0] = a00;
        diag(1, M, used, a00, sink);
    }

  private:
    void diag(unsigned k, std::vector<i64> & M, i64 used, i64 partial_trace, Sink const & sink) const
    {
        if (k + 1 == n_) {
            i64 last = trace_ - partial_trace;
            i64 u = used + last * last;
            if (u > R2_)
                return;
            M[k * n_ + k] = last;
            off(0, M, u, sink);
            return;
        }
        i64 r = isqrt64(R2_ - used);
        for (i64 v = -r; v <= r; ++v) {
            M[k * n_ + k] = v;
            diag(k + 1, M, used + v * v, partial_trace + v, sink);
        }
    }

    void off(std::size_t idx, std::vector<i64> & M, i64 used, Sink const & sink) const
    {
        if (idx == offdiag_.size()) {
            leaf(M, used, sink);
            return;
        }
        i64 r = isqrt64(R2_ - used);
        for (i64 v = -r; v <= r; ++v) {
            M[offdiag_[idx]] = v;
            off(idx + 1, M, used + v * v, sink);
        }
        M[offdiag_[idx]] = 0;
    }

    void leaf(std::vector<i64> & M, i64 used, Sink const & sink) const
    {
        M[solved_] = 0;
        auto c0 = berkowitz(M, n_);
        M[solved_] = 1;
        auto c1 = berkowitz(M, n_);
        i64 rem = R2_ - used;
        bool any_slope = false;
        i128 x = 0;
        for (unsigned k = 1; k <= n_; ++k) {
            i128 beta = c1[k] - c0[k];
            if (beta == 0)
                continue;
            i128 diff = target_[k] - c0[k];
            if (diff % beta != 0)
                return;
            x = diff / beta;
            any_slope = true;
            break;
        }
        if (!any_slope) {
            for (unsigned k = 1; k <= n_; ++k)
                if (c0[k] != target_[k])
                    return;
            i64 r = isqrt64(rem);
            for (i64 v = -r; v <= r; ++v) {
                M[solved_] = v;
                sink(M, used + v * v);
            }
            return;
        }
        for (unsigned k = 1; k <= n_; ++k)
            if (c0[k] + (c1[k] - c0[k]) * x != target_[k])
                return;
        if (x * x > rem)
            return;
        M[solved_] = static_cast<i64>(x);
        sink(M, used + static_cast<i64>(x * x));
    }
};

/* Column operations U with t^T U = (g, 0, 0, 0), g >= 0. */
std::array<std::array<i64, 4>, 4> trace_reduction(std::array<i64, 4> t, i64 & g)
{
    std::array<std::array<i64, 4>, 4> U{};
    for (int i = 0; i < 4; ++i)
        U[i][i] = 1;
    auto colop = [&](int dst, int src, i64 q) {
        t[dst] -= q * t[src];
        for (int r = 0; r < 4; ++r)
            U[r][dst] -= q * U[r][src];
    };
    auto swapcols = [&](int a, int b) {
        std::swap(t[a], t[b]);
        for (int r = 0; r < 4; ++r)
            std::swap(U[r][a], U[r][b]);
    };
    for (;;) {
        int piv = -1;
        for (int j = 0; j < 4; ++j)
            if (t[j] != 0 && (piv < 0 || std::llabs(t[j]) < std::llabs(t[piv])))
                piv = j;
        if (piv < 0)
            throw std::logic_error("trace form vanishes identically");
        swapcols(0, piv);
        bool done = true;
        for (int j = 1; j < 4; ++j) {
            if (t[j] == 0)
                continue;
            colop(j, 0, t[j] / t[0]);
            if (t[j] != 0)
                done = false;
        }
        if (done)
            break;
    }
    if (t[0] < 0) {
        t[0] = -t[0];
        for (int r = 0; r < 4; ++r)
            U[r][0] = -U[r][0];
    }
    g = t[0];
    return U;
}

template <class T>
Mat4<T> congruence_by(std::array<std::array<i64, 4>, 4> const & U, Mat4<T> const & m)
{
    Mat4<T> out;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            T acc = 0;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    acc += T(U[r][k]) * m[r][c] * T(U[c][l]);
            out[k][l] = acc;
        }
    return out;
}

/*
 * Quaternion census in coordinates y = U^-1 x where trd(x) = g y0. For each
 * (y1, y2) inside the ellipse allowed by the Gram form on the slice, nrd is
 * a quadratic in y3 solved exactly; the norm is then checked exactly.
 */
class QuaternionEnumerator
{
    std::array<std::array<i64, 4>, 4> U_;
    i64 y0_ = 0;
    bool empty_ = false;
    Mat4<i64> N_;          /* 2 nrd in y coordinates */
    Mat4<Integer> GR_, GI_; /* L * Gram, rational and sqrt(s) parts */
    Integer L_, s_;
    i64 two_n0_;
    i64 trace_;
    /* bounds on the slice y0 fixed, in long double */
    long double zc_[3];
    long double Hi_[3][3];
    long double S_[2][2];
    long double H_[3][3];
    long double qmin_;
    long double rem_ = -1;
    Thresholds const & th_;
    std::array<Integer, 4> trd_;
    Mat4<Integer> nrd2_;

  public:
    using Sink = std::function<void(std::array<i64, 4> const &, std::size_t)>;

    QuaternionEnumerator(QuaternionOrder const & order, MonicIntPolynomial const & p, Thresholds const & th)
        : th_(th), trd_(order.trd), nrd2_(order.nrd2)
    {
        if (p.degree() != 2)
            throw Error(Reason::invalid_argument, "quaternion census needs a quadratic");
        i64 t = -to_i64(p[1], "trace");
        trace_ = t;
        two_n0_ = 2 * to_i64(p[0], "norm");
        std::array<i64, 4> tv;
        for (int k = 0; k < 4; ++k)
            tv[k] = to_i64(order.trd[k], "order trace form");
        i64 g;
        U_ = trace_reduction(tv, g);
        if (t % g != 0) {
            empty_ = true;
            return;
        }
        y0_ = t / g;

        Mat4<Integer> nrd;
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l)
                nrd[k][l] = order.nrd2[k][l];
        auto Ny = congruence_by(U_, nrd);
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l)
                N_[k][l] = to_i64(Ny[k][l], "norm form");

        auto GR = congruence_by(U_, order.gram.rational);
        auto GI = congruence_by(U_, order.gram.irrational);
        L_ = 1;
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                L_ = lcm(L_, GR[k][l].get_den());
                L_ = lcm(L_, GI[k][l].get_den());
            }
        s_ = order.gram.s;
        long double rs = std::sqrt(static_cast<long double>(s_.get_d()));
        long double G[4][4];
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                GR_[k][l] = Rational(GR[k][l] * L_).get_num();
                GI_[k][l] = Rational(GI[k][l] * L_).get_num();
                G[k][l] = static_cast<long double>(GR[k][l].get_d()) + rs * static_cast<long double>(GI[k][l].get_d());
            }
        slice_bounds(G);
    }

    bool empty() const { return empty_ || rem_ < 0; }

    /* Range of y1 (padded). */
    std::pair<i64, i64> outer_range() const
    {
        long double r = std::sqrt(std::max(0.0L, rem_ * Hi_[0][0]));
        return {static_cast<i64>(std::floor(zc_[0] - r)) - 1, static_cast<i64>(std::ceil(zc_[0] + r)) + 1};
    }

    void run(i64 y1, Sink const & sink) const
    {
        long double w1 = y1 - zc_[0];
        // S11 w1^2 + 2 S12 w1 w2 + S22 w2^2 <= rem
        long double a = S_[1][1], b = S_[0][1] * w1, c = S_[0][0] * w1 * w1 - rem_;
        long double disc = b * b - a * c;
        if (disc < 0)
            disc = 0;
        long double sq = std::sqrt(disc);
        i64 lo = static_cast<i64>(std::floor(zc_[1] + (-b - sq) / a)) - 1;
        i64 hi = static_cast<i64>(std::ceil(zc_[1] + (-b + sq) / a)) + 1;
        for (i64 y2 = lo; y2 <= hi; ++y2)
            inner(y1, y2, sink);
    }

  private:
    void slice_bounds(long double G[4][4])
    {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                H_[i][j] = G[i + 1][j + 1];
        // inverse of the 3x3 slice form
        long double(&H)[3][3] = H_;
        long double det = H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1])
                          - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0])
                          + H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
                Hi_[i][j] = (H[i1][j1] * H[i2][j2] - H[i1][j2] * H[i2][j1]) / det;
            }
        long double h[3] = {G[1][0], G[2][0], G[3][0]};
        long double Hih[3];
        for (int i = 0; i < 3; ++i)
            Hih[i] = Hi_[i][0] * h[0] + Hi_[i][1] * h[1] + Hi_[i][2] * h[2];
        long double y0 = static_cast<long double>(y0_);
        for (int i = 0; i < 3; ++i)
            zc_[i] = -y0 * Hih[i];
        qmin_ = G[0][0] * y0 * y0 - y0 * y0 * (h[0] * Hih[0] + h[1] * Hih[1] + h[2] * Hih[2]);
        long double T2 = static_cast<long double>(th_.max_t2().get_d());
        rem_ = T2 * (1 + 1e-12L) + 1e-9L - qmin_;
        // the 2x2 form on (w1, w2) after minimising over w3: inverse of Hi restricted
        long double d2 = Hi_[0][0] * Hi_[1][1] - Hi_[0][1] * Hi_[1][0];
        S_[0][0] = Hi_[1][1] / d2;
        S_[1][1] = Hi_[0][0] / d2;
        S_[0][1] = S_[1][0] = -Hi_[0][1] / d2;
    }

    void inner(i64 y1, i64 y2, Sink const & sink) const
    {
        i128 y[4] = {y0_, y1, y2, 0};
        i128 A = N_[3][3];
        i128 Bh = N_[0][3] * y[0] + N_[1][3] * y[1] + N_[2][3] * y[2];
        i128 C = -static_cast<i128>(two_n0_);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                C += N_[i][j] * y[i] * y[j];
        // A y3^2 + 2 Bh y3 + C = 0
        if (A != 0) {
            i128 D = Bh * Bh - A * C;
            if (D < 0)
                return;
            i128 r;
            if (!is_square128(D, r))
                return;
            for (int sgn : {1, -1}) {
                if (sgn < 0 && r == 0)
                    break;
                i128 num = -Bh + sgn * r;
                if (num % A == 0)
                    accept(y1, y2, num / A, sink);
            }
        } else if (Bh != 0) {
            if (C % (2 * Bh) == 0)
                accept(y1, y2, -C / (2 * Bh), sink);
        } else if (C == 0) {
            long double w1 = y1 - zc_[0], w2 = y2 - zc_[1];
            long double a = H_[2][2], b = H_[0][2] * w1 + H_[1][2] * w2;
            long double c = H_[0][0] * w1 * w1 + 2 * H_[0][1] * w1 * w2 + H_[1][1] * w2 * w2 - rem_;
            long double disc = std::max(0.0L, b * b - a * c);
            i64 lo = static_cast<i64>(std::floor(zc_[2] + (-b - std::sqrt(disc)) / a)) - 1;
            i64 hi = static_cast<i64>(std::ceil(zc_[2] + (-b + std::sqrt(disc)) / a)) + 1;
            for (i64 y3 = lo; y3 <= hi; ++y3)
                accept(y1, y2, y3, sink);
        }
    }

    void accept(i64 y1, i64 y2, i128 y3, Sink const & sink) const
    {
        i128 y[4] = {y0_, y1, y2, y3};
        std::array<i64, 4> x{};
        for (int r = 0; r < 4; ++r) {
            i128 acc = 0;
            for (int c = 0; c < 4; ++c)
                acc += static_cast<i128>(U_[r][c]) * y[c];
            x[r] = static_cast<i64>(acc);
        }
        // the Gram parts were transported to y coordinates
        Integer yz[4];
        for (int k = 0; k < 4; ++k)
            yz[k] = Integer(to_string(y[k]));
        Integer A = 0, B = 0;
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                Integer xx = yz[k] * yz[l];
                A += GR_[k][l] * xx;
                B += GI_[k][l] * xx;
            }
        std::size_t k = th_.first_fit(A, B, s_, L_);
        if (k == th_.size())
            return;
        check_solution(x);
        sink(x, k);
    }

    void check_solution(std::array<i64, 4> const & x) const
    {
        Integer t = 0, n2 = 0;
        for (int k = 0; k < 4; ++k) {
            t += trd_[k] * static_cast<long>(x[k]);
            for (int l = 0; l < 4; ++l)
                n2 += nrd2_[k][l] * static_cast<long>(x[k]) * static_cast<long>(x[l]);
        }
        if (n2 != two_n0_ || t != trace_)
            throw std::logic_error("quaternion census produced a non-solution");
    }
};

void require_irreducible(MonicIntPolynomial const & p)
{
    if (!is_irreducible_over_Q(p))
        throw Error(Reason::reducible_polynomial, p.to_string() + " is reducible over Q");
}

} // namespace

std::string_view mode_name(CensusMode mode)
{
    switch (mode) {
    case CensusMode::matrix_n2:
        return "matrix_n2";
    case CensusMode::matrix_generic:
        return "matrix_generic";
    case CensusMode::quaternion_order:
        return "quaternion_order";
    }
    return "?";
}

std::vector<Rational> default_grid(Rational const & t_max, unsigned points)
{
    if (t_max <= 0)
        throw Error(Reason::invalid_argument, "T_max must be positive");
    if (points == 0)
        throw Error(Reason::invalid_argument, "grid needs at least one point");
    std::vector<Rational> grid;
    for (unsigned k = points; k-- > 0;) {
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, k);
        Rational T = t_max / Rational(scale);
        T.canonicalize();
        grid.push_back(T);
    }
    return grid;
}

std::vector<std::uint64_t> matrix_census_n2(MonicIntPolynomial const & p, std::vector<Rational> const & grid,
                                            unsigned threads)
{
    if (p.degree() != 2)
        throw Error(Reason::invalid_argument, "matrix_census_n2 needs a quadratic");
    require_irreducible(p);
    Thresholds th(grid);
    i64 t = -to_i64(p[1], "trace");
    i64 d = to_i64(p[0], "determinant");
    i64 R2 = th.max_floor();
    i64 R = isqrt64(R2);
    std::size_t K = th.size();
    auto buckets = strided(-R, R, threads, K + 1, [&](i64 a, std::vector<std::uint64_t> & bucket) {
        i64 e = t - a;
        i64 base = a * a + e * e;
        if (base > R2)
            return;
        i64 rem = R2 - base;
        i64 m = a * e - d;
        if (m == 0)
            throw std::logic_error("integer eigenvalue: the polynomial is reducible");
        i64 M = m < 0 ? -m : m;
        if (M > rem / 2 + 1)
            return;
        i64 lo = std::max<i64>(1, M / (isqrt64(rem) + 1));
        i64 hi = isqrt64(M);
        for (i64 delta = lo; delta <= hi; ++delta) {
            if (M % delta != 0)
                continue;
            i64 partner = M / delta;
            i64 norm2 = base + delta * delta + partner * partner;
            if (norm2 > R2)
                continue;
            bucket[th.first_fit(norm2)] += delta == partner ? 2 : 4;
        }
    });
    return cumulate(buckets, K);
}

std::uint64_t matrix_census_n2(MonicIntPolynomial const & p, Rational const & T)
{
    return matrix_census_n2(p, std::vector<Rational>{T}).front();
}

std::vector<std::uint64_t> matrix_census_generic(MonicIntPolynomial const & p, std::vector<Rational> const & grid,
                                                 unsigned threads)
{
    require_irreducible(p);
    Thresholds th(grid);
    GenericEnumerator en(p, th.max_floor());
    i64 R = en.outer_radius();
    std::size_t K = th.size();
    auto buckets = strided(-R, R, threads, K + 1, [&](i64 a00, std::vector<std::uint64_t> & bucket) {
        en.run(a00, [&](std::vector<i64> const &, i64 norm2) { ++bucket[th.first_fit(norm2)]; });
    });
    return cumulate(buckets, K);
}

std::uint64_t matrix_census_generic(MonicIntPolynomial const & p, Rational const & T)
{
    return matrix_census_generic(p, std::vector<Rational>{T}).front();
}

std::vector<std::vector<long>> matrix_solutions(MonicIntPolynomial const & p, Rational const & T)
{
    require_irreducible(p);
    Thresholds th({T});
    GenericEnumerator en(p, th.max_floor());
    std::vector<std::vector<long>> out;
    i64 R = en.outer_radius();
    for (i64 a00 = -R; a00 <= R; ++a00)
        en.run(a00, [&](std::vector<i64> const & M, i64) { out.emplace_back(M.begin(), M.end()); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> order_census_quaternion(QuaternionOrder const & order, MonicIntPolynomial const & p,
                                                   std::vector<Rational> const & grid, unsigned threads)
{
    require_irreducible(p);
    Thresholds th(grid);
    std::size_t K = th.size();
    QuaternionEnumerator en(order, p, th);
    if (en.empty())
        return std::vector<std::uint64_t>(K, 0);
    auto [lo, hi] = en.outer_range();
    auto buckets = strided(lo, hi, threads, K + 1, [&](i64 y1, std::vector<std::uint64_t> & bucket) {
        en.run(y1, [&](std::array<i64, 4> const &, std::size_t k) { ++bucket[k]; });
    });
    return cumulate(buckets, K);
}

std::uint64_t order_census_quaternion(QuaternionOrder const & order, MonicIntPolynomial const & p,
                                      Rational const & T)
{
    return order_census_quaternion(order, p, std::vector<Rational>{T}).front();
}

std::vector<std::array<long, 4>> order_solutions(QuaternionOrder const & order, MonicIntPolynomial const & p,
                                                 Rational const & T)
{
    require_irreducible(p);
    Thresholds th({T});
    QuaternionEnumerator en(order, p, th);
    std::vector<std::array<long, 4>> out;
    if (en.empty())
        return out;
    auto [lo, hi] = en.outer_range();
    for (i64 y1 = lo; y1 <= hi; ++y1)
        en.run(y1, [&](std::array<i64, 4> const & x, std::size_t) { out.push_back({x[0], x[1], x[2], x[3]}); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ConvergenceRow> convergence_table(CensusSeries const & series, AsymptoticConstant const * constant,
                                              unsigned exponent)
{
    if (series.grid.empty() || series.grid.size() != series.counts.size())
        throw Error(Reason::invalid_argument, "census series is empty or misaligned");
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k < series.grid.size(); ++k) {
        ConvergenceRow row{series.grid[k], series.counts[k], 0, 0, 0};
        if (constant) {
            Real Tm = pow(to_real(series.grid[k]), exponent);
            row.count_over_Tm = Real(series.counts[k]) / Tm;
            row.predicted_C = constant->C;
            row.ratio = row.count_over_Tm / constant->C;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace cpcensus
