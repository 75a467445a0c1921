#include "cpcensus/quaternion.hpp"

#include <set>
#include <stdexcept>
#include <string>

#include "cpcensus/error.hpp"

namespace cpcensus {

namespace {

int legendre(Integer const & u, std::uint64_t q)
{
    Integer qq(static_cast<unsigned long>(q));
    return mpz_legendre(u.get_mpz_t(), qq.get_mpz_t());
}

/* a = q^alpha * u with q not dividing u */
std::pair<unsigned, Integer> split_off(Integer a, std::uint64_t q)
{
    unsigned alpha = valuation(a, q);
    for (unsigned k = 0; k < alpha; ++k)
        a /= static_cast<unsigned long>(q);
    return {alpha, a};
}

unsigned mod8(Integer const & u)
{
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), 8);
    return static_cast<unsigned>(r.get_ui());
}

bool is_integral(Rational const & x)
{
    return x.get_den() == 1;
}

std::string coords_text(QuatCoords const & x)
{
    std::string s = "(";
    for (int k = 0; k < 4; ++k)
        s += (k ? ", " : "") + x[k].get_str();
    return s + ")";
}

/* Inverse of the matrix whose columns are the basis vectors. */
Mat4<Rational> basis_inverse(QuaternionSpec const & spec)
{
    Mat4<Rational> m, inv;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            m[r][c] = spec.basis[c][r];
            inv[r][c] = r == c ? 1 : 0;
        }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            throw Error(Reason::order_not_ring, "order basis is linearly dependent");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational f = m[col][col];
        for (int c = 0; c < 4; ++c) {
            m[col][c] /= f;
            inv[col][c] /= f;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0)
                continue;
            Rational g = m[r][col];
            for (int c = 0; c < 4; ++c) {
                m[r][c] -= g * m[col][c];
                inv[r][c] -= g * inv[col][c];
            }
        }
    }
    return inv;
}

QuatCoords in_basis(Mat4<Rational> const & inv, QuatCoords const & z)
{
    QuatCoords out;
    for (int r = 0; r < 4; ++r) {
        out[r] = 0;
        for (int c = 0; c < 4; ++c)
            out[r] += inv[r][c] * z[c];
    }
    return out;
}

template <class T>
T det4(Mat4<T> m)
{
    T det = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            return T(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            T f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

/* Standard-coordinate Frobenius form: rational part, irrational part, s. */
void standard_form(Integer const & a, Integer const & b, Mat4<Rational> & rat, Mat4<Rational> & irr, Integer & s)
{
    for (auto & row : rat)
        row.fill(0);
    for (auto & row : irr)
        row.fill(0);
    if (a > 0) {
        // i -> diag(sa, -sa), j -> [[0,1],[b,0]], ij -> [[0, sa],[-b sa, 0]]
        s = a;
        rat[0][0] = 2;
        rat[1][1] = 2 * a;
        rat[2][2] = 1 + b * b;
        rat[3][3] = a * (1 + b * b);
        irr[2][3] = irr[3][2] = 1 - b * b;
    } else {
        // j -> diag(sb, -sb), i -> [[0,1],[a,0]], ij -> [[0, -sb],[a sb, 0]]
        s = b;
        rat[0][0] = 2;
        rat[1][1] = 1 + a * a;
        rat[2][2] = 2 * b;
        rat[3][3] = b * (1 + a * a);
        irr[1][3] = irr[3][1] = a * a - 1;
    }
}

Mat4<Rational> congruence(std::array<QuatCoords, 4> const & basis, Mat4<Rational> const & m)
{
    Mat4<Rational> out;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            Rational acc = 0;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    if (m[r][c] != 0)
                        acc += basis[k][r] * m[r][c] * basis[l][c];
            out[k][l] = acc;
        }
    return out;
}

void require_positive_definite(Mat4<Real> const & g)
{
    for (int k = 1; k <= 4; ++k) {
        Mat4<Real> lead;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                lead[r][c] = (r < k && c < k) ? g[r][c] : Real(r == c ? 1 : 0);
        if (det4(lead) <= 0)
            throw std::logic_error("Frobenius Gram matrix is not positive definite");
    }
}

} // namespace

int hilbert_symbol(Integer const & a, Integer const & b, std::uint64_t q)
{
    if (a == 0 || b == 0)
        throw Error(Reason::invalid_argument, "Hilbert symbol needs nonzero arguments");
    if (q == infinite_place)
        return (a < 0 && b < 0) ? -1 : 1;
    auto [alpha, u] = split_off(a, q);
    auto [beta, v] = split_off(b, q);
    if (q == 2) {
        unsigned u8 = mod8(u), v8 = mod8(v);
        unsigned eps_u = (u8 % 4 == 3), eps_v = (v8 % 4 == 3);
        unsigned om_u = (u8 == 3 || u8 == 5), om_v = (v8 == 3 || v8 == 5);
        unsigned e = eps_u * eps_v + alpha * om_v + beta * om_u;
        return e % 2 ? -1 : 1;
    }
    int sign = ((alpha * beta) % 2 == 1 && q % 4 == 3) ? -1 : 1;
    if (beta % 2)
        sign *= legendre(u, q);
    if (alpha % 2)
        sign *= legendre(v, q);
    return sign;
}

std::vector<std::uint64_t> ramified_set(Integer const & a, Integer const & b)
{
    if (hilbert_symbol(a, b, infinite_place) == -1)
        throw Error(Reason::definite_algebra,
                    "(" + a.get_str() + ", " + b.get_str() + ") is ramified at the real place");
    std::set<std::uint64_t> candidates{2};
    for (Integer const * x : {&a, &b})
        for (auto const & [prime, e] : factor_integer(*x))
            candidates.insert(prime.get_ui());
    std::vector<std::uint64_t> S;
    for (auto q : candidates)
        if (hilbert_symbol(a, b, q) == -1)
            S.push_back(q);
    if (S.size() % 2)
        throw std::logic_error("odd number of ramified places");
    return S;
}

QuatCoords quat_mul(Integer const & a, Integer const & b, QuatCoords const & x, QuatCoords const & y)
{
    Rational A(a), B(b);
    return {
        x[0] * y[0] + A * x[1] * y[1] + B * x[2] * y[2] - A * B * x[3] * y[3],
        x[0] * y[1] + x[1] * y[0] - B * x[2] * y[3] + B * x[3] * y[2],
        x[0] * y[2] + x[2] * y[0] + A * x[1] * y[3] - A * x[3] * y[1],
        x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1],
    };
}

QuatCoords quat_conj(QuatCoords const & x)
{
    return {x[0], -x[1], -x[2], -x[3]};
}

Rational quat_trd(QuatCoords const & x)
{
    return 2 * x[0];
}

Rational quat_nrd(Integer const & a, Integer const & b, QuatCoords const & x)
{
    Rational A(a), B(b);
    return x[0] * x[0] - A * x[1] * x[1] - B * x[2] * x[2] + A * B * x[3] * x[3];
}

Integer verify_order(QuaternionSpec const & spec)
{
    auto S = ramified_set(spec.a, spec.b);
    auto inv = basis_inverse(spec);

    for (auto const & c : in_basis(inv, {1, 0, 0, 0}))
        if (!is_integral(c))
            throw Error(Reason::order_not_ring, "1 is not in the lattice spanned by order_basis");
    for (int k = 0; k < 4; ++k) {
        if (!is_integral(quat_trd(spec.basis[k])) || !is_integral(quat_nrd(spec.a, spec.b, spec.basis[k])))
            throw Error(Reason::order_not_integral,
                        "basis element " + std::to_string(k) + " " + coords_text(spec.basis[k])
                            + " has non-integral trd or nrd");
    }
    Mat4<Rational> pairing;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            auto prod = quat_mul(spec.a, spec.b, spec.basis[k], spec.basis[l]);
            for (auto const & c : in_basis(inv, prod))
                if (!is_integral(c))
                    throw Error(Reason::order_not_ring, "product e" + std::to_string(k) + "*e" + std::to_string(l)
                                                            + " leaves the lattice");
            pairing[k][l] = quat_trd(prod);
        }

    Rational det = det4(pairing);
    Integer disc2 = abs(det.get_num());
    Integer reduced;
    if (det.get_den() != 1 || !is_square(disc2, &reduced))
        throw Error(Reason::order_not_ring, "trace pairing determinant " + det.get_str() + " is not a square");
    Integer expected = 1;
    for (auto q : S)
        expected *= static_cast<unsigned long>(q);
    if (reduced != expected)
        throw Error(Reason::order_not_maximal, "reduced discriminant " + reduced.get_str() + " != "
                                                   + expected.get_str() + " (product of ramified primes)");
    return reduced;
}

std::array<Mat2, 4> real_embedding(QuaternionSpec const & spec)
{
    std::array<Mat2, 4> std_images;
    std_images[0] = {1, 0, 0, 1};
    if (spec.a > 0) {
        Real sa = sqrt(to_real(spec.a));
        Real b = to_real(spec.b);
        std_images[1] = {sa, 0, 0, -sa};
        std_images[2] = {0, 1, b, 0};
        std_images[3] = {0, sa, -b * sa, 0};
    } else if (spec.b > 0) {
        Real sb = sqrt(to_real(spec.b));
        Real a = to_real(spec.a);
        std_images[1] = {0, 1, a, 0};
        std_images[2] = {sb, 0, 0, -sb};
        std_images[3] = {0, -sb, a * sb, 0};
    } else {
        throw Error(Reason::definite_algebra, "no real embedding: both structure constants are negative");
    }
    std::array<Mat2, 4> out;
    for (int k = 0; k < 4; ++k) {
        out[k] = {0, 0, 0, 0};
        for (int c = 0; c < 4; ++c) {
            Real coeff = to_real(spec.basis[k][c]);
            for (int e = 0; e < 4; ++e)
                out[k][e] += coeff * std_images[c][e];
        }
    }
    return out;
}

QuatCoords to_standard(QuaternionSpec const & spec, std::array<Integer, 4> const & x)
{
    QuatCoords z{0, 0, 0, 0};
    for (int k = 0; k < 4; ++k)
        for (int c = 0; c < 4; ++c)
            z[c] += Rational(x[k]) * spec.basis[k][c];
    return z;
}

MonicIntPolynomial reduced_charpoly(QuaternionSpec const & spec, std::array<Integer, 4> const & x)
{
    auto z = to_standard(spec, x);
    Rational t = quat_trd(z), n = quat_nrd(spec.a, spec.b, z);
    if (!is_integral(t) || !is_integral(n))
        throw Error(Reason::order_not_integral, "element " + coords_text(z) + " is not integral");
    return MonicIntPolynomial({n.get_num(), -t.get_num(), Integer(1)});
}

Mat4<Real> frobenius_gram(QuaternionSpec const & spec)
{
    auto img = real_embedding(spec);
    Mat4<Real> g;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
            Real acc = 0;
            for (int e = 0; e < 4; ++e)
                acc += img[k][e] * img[l][e];
            g[k][l] = acc;
        }
    require_positive_definite(g);
    return g;
}

bool ExactGram::is_rational() const
{
    for (auto const & row : irrational)
        for (auto const & v : row)
            if (v != 0)
                return false;
    return true;
}

Mat4<Real> ExactGram::numeric() const
{
    Real rs = sqrt(to_real(s));
    Mat4<Real> g;
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
            g[k][l] = to_real(rational[k][l]) + rs * to_real(irrational[k][l]);
    return g;
}

ExactGram exact_frobenius_gram(QuaternionSpec const & spec)
{
    if (spec.a <= 0 && spec.b <= 0)
        throw Error(Reason::definite_algebra, "no real embedding: both structure constants are negative");
    Mat4<Rational> rat, irr;
    ExactGram g;
    standard_form(spec.a, spec.b, rat, irr, g.s);
    g.rational = congruence(spec.basis, rat);
    g.irrational = congruence(spec.basis, irr);
    Integer root;
    if (is_square(g.s, &root)) {
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                g.rational[k][l] += Rational(root) * g.irrational[k][l];
                g.irrational[k][l] = 0;
            }
        g.s = 1;
    }
    return g;
}

QuaternionOrder make_quaternion_order(QuaternionSpec const & spec)
{
    QuaternionOrder order;
    order.spec = spec;
    order.reduced_discriminant = verify_order(spec);
    order.ramified = ramified_set(spec.a, spec.b);
    for (int k = 0; k < 4; ++k) {
        order.trd[k] = quat_trd(spec.basis[k]).get_num();
        for (int l = 0; l < 4; ++l) {
            Rational t = quat_trd(quat_mul(spec.a, spec.b, spec.basis[k], quat_conj(spec.basis[l])));
            order.nrd2[k][l] = t.get_num();
        }
    }
    order.gram = exact_frobenius_gram(spec);
    return order;
}

} // namespace cpcensus
