#include "cpcensus/pipeline.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cpcensus/error.hpp"
#include "cpcensus/local_analysis.hpp"

namespace cpcensus {

namespace {

using json = nlohmann::json;

[[noreturn]] void malformed(std::string const & what)
{
    throw Error(Reason::spec_malformed, what);
}

Integer json_integer(json const & j, std::string const & what)
{
    static std::regex const pattern("[-+]?[0-9]+");
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                      : Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (!std::regex_match(s, pattern))
            malformed(what + ": \"" + s + "\" is not an integer");
        if (s[0] == '+')
            s.erase(0, 1);
        return Integer(s);
    }
    malformed(what + " must be an integer");
}

long json_long(json const & j, std::string const & what)
{
    Integer z = json_integer(j, what);
    if (!z.fits_slong_p())
        malformed(what + " is out of range");
    return z.get_si();
}

std::optional<Rational> rational_from(std::string const & s)
{
    static std::regex const pattern("\\s*([-+]?[0-9]+)\\s*(/\\s*([0-9]+)\\s*)?");
    std::smatch m;
    if (!std::regex_match(s, m, pattern))
        return std::nullopt;
    std::string num = m[1].str();
    if (num[0] == '+')
        num.erase(0, 1);
    Integer den = m[3].matched ? Integer(m[3].str()) : Integer(1);
    if (den == 0)
        return std::nullopt;
    Rational r(Integer(num), den);
    r.canonicalize();
    return r;
}

Rational json_rational(json const & j, std::string const & what)
{
    if (j.is_number_integer())
        return Rational(json_integer(j, what));
    if (!j.is_string())
        malformed(what + " must be an integer or a rational string such as \"3/2\"");
    auto r = rational_from(j.get<std::string>());
    if (!r)
        malformed(what + ": \"" + j.get<std::string>() + "\" is not a rational");
    return *r;
}

void reject_unknown(json const & obj, std::set<std::string> const & known, std::string const & where)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            malformed("unknown key \"" + it.key() + "\" in " + where);
}

json const & require(json const & obj, char const * key, std::string const & where)
{
    if (!obj.contains(key))
        malformed(where + " needs \"" + key + "\"");
    return obj.at(key);
}

unsigned bounded(json const & j, std::string const & what, long lo, long hi)
{
    long v = json_long(j, what);
    if (v < lo || v > hi)
        malformed(what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<unsigned>(v);
}

void check_settings(CensusSettings const & s)
{
    if (s.t_max <= 0)
        throw Error(Reason::invalid_argument, "T_max must be positive");
    if (s.grid_points == 0 || s.grid_points > 64)
        throw Error(Reason::invalid_argument, "grid must have between 1 and 64 points");
    if (s.threads == 0 || s.threads > 256)
        throw Error(Reason::invalid_argument, "threads must lie in [1, 256]");
}

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

std::string fmt6(Real const & x)
{
    return format_real(x, 6);
}

std::string fmt12(Real const & x)
{
    return format_real(x, 12);
}

void print_invariants(FieldInvariants const & inv, std::ostream & out)
{
    out << "degree " << inv.degree << '\n'
        << "r1 " << inv.r1 << '\n'
        << "r2 " << inv.r2 << '\n'
        << "w " << inv.w << '\n'
        << "d " << inv.d.get_str() << '\n'
        << "h " << inv.h.get_str() << '\n'
        << "R " << fmt6(inv.R) << '\n'
        << "zeta_residue " << fmt6(zeta_residue(inv)) << '\n'
        << "provenance " << (inv.provenance == Provenance::computed ? "computed" : "fixture") << '\n';
}

void print_local(std::vector<LocalProfile> const & profiles, std::ostream & out)
{
    for (auto const & prof : profiles) {
        out << "q=" << prof.q << " division=" << yes_no(prof.is_division_prime) << " ef=";
        for (std::size_t i = 0; i < prof.pairs.size(); ++i)
            out << (i ? "," : "") << '(' << prof.pairs[i].e << ',' << prof.pairs[i].f << ')';
        out << " irreducible=" << yes_no(prof.irreducible_over_Qq) << " feasible=" << yes_no(prof.feasible());
        if (prof.orbit_count)
            out << " orbits=" << *prof.orbit_count;
        if (prof.correction_factor)
            out << " correction=" << fmt6(*prof.correction_factor);
        if (prof.split_density)
            out << " density=" << fmt6(*prof.split_density);
        out << '\n';
    }
}

void print_constant(AsymptoticConstant const & c, std::ostream & out)
{
    out << "C " << fmt6(c.C) << '\n'
        << "exponent " << c.exponent << '\n'
        << "zeta_residue " << fmt6(c.zeta_residue) << '\n'
        << "omega " << fmt6(c.omega) << '\n'
        << "lambda_product " << fmt6(c.lambda_product) << '\n';
    for (auto const & [q, f] : c.corrections)
        out << "correction q=" << q << ' ' << fmt6(f) << '\n';
}

void print_table(std::vector<ConvergenceRow> const & rows, std::ostream & out)
{
    out << std::setw(14) << "T" << std::setw(14) << "N(T)" << std::setw(14) << "N/T^m" << std::setw(14)
        << "C" << std::setw(14) << "ratio" << '\n';
    for (auto const & r : rows)
        out << std::setw(14) << fmt6(to_real(r.T)) << std::setw(14) << r.count << std::setw(14)
            << fmt6(r.count_over_Tm) << std::setw(14) << fmt6(r.predicted_C) << std::setw(14) << fmt6(r.ratio)
            << '\n';
}

void write_file(std::string const & path, std::string const & text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(Reason::invalid_argument, "cannot open " + path + " for writing");
    f << text;
    if (!f)
        throw Error(Reason::invalid_argument, "write to " + path + " failed");
}

} // namespace

Rational parse_rational(std::string const & text)
{
    auto r = rational_from(text);
    if (!r)
        throw Error(Reason::invalid_argument, "\"" + text + "\" is not an integer or a fraction a/b");
    return *r;
}

ProblemSpec parse_spec(std::string const & json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (json::parse_error const & e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        malformed("the spec must be a JSON object");
    reject_unknown(root, {"polynomial", "algebra", "field_invariants", "census", "irreducibility_certificate"},
                   "spec");

    ProblemSpec spec;
    auto const & poly = require(root, "polynomial", "spec");
    if (!poly.is_array() || poly.size() < 3)
        malformed("polynomial must be an ascending coefficient list of degree >= 2");
    std::vector<Integer> coeffs;
    for (std::size_t i = 0; i < poly.size(); ++i)
        coeffs.push_back(json_integer(poly[i], "polynomial[" + std::to_string(i) + "]"));
    if (coeffs.back() != 1)
        malformed("polynomial must be monic (last coefficient 1)");
    spec.polynomial = MonicIntPolynomial(coeffs);
    spec.algebra.degree = spec.polynomial.degree();

    if (root.contains("algebra")) {
        auto const & alg = root.at("algebra");
        if (!alg.is_object())
            malformed("algebra must be an object");
        auto const & type = require(alg, "type", "algebra");
        if (type == "matrix") {
            reject_unknown(alg, {"type"}, "algebra");
        } else if (type == "quaternion") {
            reject_unknown(alg, {"type", "a", "b", "order_basis"}, "algebra");
            spec.algebra.kind = AlgebraKind::quaternion;
            spec.algebra.quaternion.a = json_integer(require(alg, "a", "algebra"), "algebra.a");
            spec.algebra.quaternion.b = json_integer(require(alg, "b", "algebra"), "algebra.b");
            if (!alg.contains("order_basis"))
                throw Error(Reason::order_basis_required, "order_basis required for a quaternion algebra");
            auto const & basis = alg.at("order_basis");
            if (!basis.is_array() || basis.size() != 4)
                malformed("order_basis must be a 4x4 matrix");
            for (std::size_t k = 0; k < 4; ++k) {
                if (!basis[k].is_array() || basis[k].size() != 4)
                    malformed("order_basis must be a 4x4 matrix");
                for (std::size_t c = 0; c < 4; ++c)
                    spec.algebra.quaternion.basis[k][c] = json_rational(
                        basis[k][c], "order_basis[" + std::to_string(k) + "][" + std::to_string(c) + "]");
            }
        } else {
            malformed("algebra.type must be \"matrix\" or \"quaternion\"");
        }
    }

    if (root.contains("field_invariants")) {
        auto const & fi = root.at("field_invariants");
        if (!fi.is_object())
            malformed("field_invariants must be an object");
        reject_unknown(fi, {"r1", "r2", "w", "d", "h", "R"}, "field_invariants");
        InvariantsFixture fx;
        fx.r1 = json_long(require(fi, "r1", "field_invariants"), "r1");
        fx.r2 = json_long(require(fi, "r2", "field_invariants"), "r2");
        fx.w = json_long(require(fi, "w", "field_invariants"), "w");
        fx.d = json_integer(require(fi, "d", "field_invariants"), "d");
        fx.h = json_integer(require(fi, "h", "field_invariants"), "h");
        auto const & R = require(fi, "R", "field_invariants");
        if (R.is_string())
            fx.R = parse_real(R.get<std::string>());
        else if (R.is_number())
            fx.R = Real(R.get<double>());
        else
            malformed("R must be a decimal string or a number");
        spec.field_invariants = fx;
    }

    if (root.contains("census")) {
        auto const & c = root.at("census");
        if (!c.is_object())
            malformed("census must be an object");
        reject_unknown(c, {"T_max", "grid_points", "threads"}, "census");
        if (c.contains("T_max"))
            spec.census.t_max = json_rational(c.at("T_max"), "census.T_max");
        if (c.contains("grid_points"))
            spec.census.grid_points = bounded(c.at("grid_points"), "census.grid_points", 1, 64);
        if (c.contains("threads"))
            spec.census.threads = bounded(c.at("threads"), "census.threads", 1, 256);
        if (spec.census.t_max <= 0)
            malformed("census.T_max must be positive");
    }

    if (root.contains("irreducibility_certificate"))
        spec.irreducibility_certificate = bounded(root.at("irreducibility_certificate"),
                                                  "irreducibility_certificate", 2, 1000000);
    return spec;
}

ProblemSpec load_spec(std::string const & path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error(Reason::spec_unreadable, "cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    if (f.bad())
        throw Error(Reason::spec_unreadable, "error while reading " + path);
    return parse_spec(ss.str());
}

Problem prepare(ProblemSpec const & spec)
{
    Problem pb;
    pb.spec = spec;
    auto const & p = spec.polynomial;
    unsigned n = p.degree();
    pb.spec.algebra.degree = n;

    if (!is_irreducible_over_Q(p, spec.irreducibility_certificate))
        throw Error(Reason::reducible_polynomial, p.to_string() + " is reducible over Q");
    for (auto const & [q, e] : factor_integer(discriminant(p))) {
        if (e < 2 || !q.fits_ulong_p())
            continue;
        if (!dedekind_maximality_test(p, q.get_ui()))
            throw Error(Reason::not_integrally_closed,
                        "Z[x]/(p) is not maximal at " + q.get_str() + " (Dedekind criterion)");
    }

    if (spec.algebra.kind == AlgebraKind::quaternion) {
        if (n != 2)
            throw Error(Reason::unsupported_degree, "a quaternion algebra needs a quadratic polynomial");
        pb.order = make_quaternion_order(spec.algebra.quaternion);
    }

    if (n == 2) {
        pb.invariants = compute_invariants_quadratic(p);
    } else {
        if (!spec.field_invariants)
            throw Error(Reason::field_invariants_required,
                        "field_invariants are required for degree " + std::to_string(n));
        pb.invariants = load_invariants_fixture(*spec.field_invariants, p);
    }

    pb.profiles = local_profiles(p, pb.spec.algebra);
    for (auto const & prof : pb.profiles)
        if (!prof.feasible() && !pb.infeasible_prime)
            pb.infeasible_prime = prof.q;
    if (!pb.infeasible_prime)
        pb.constant = assemble_constant(pb.invariants, pb.profiles, n);
    return pb;
}

CensusSeries run_census(Problem const & problem, CensusSettings const & settings)
{
    check_settings(settings);
    CensusSeries series;
    auto const & p = problem.spec.polynomial;
    unsigned n = p.degree();
    if (problem.order)
        series.mode = CensusMode::quaternion_order;
    else if (n == 2)
        series.mode = CensusMode::matrix_n2;
    else if (n == 3)
        series.mode = CensusMode::matrix_generic;
    else
        throw Error(Reason::unsupported_degree, "censuses are implemented for n = 2 and 3");

    if (problem.infeasible_prime) {
        // nothing to enumerate: the local obstruction empties the census
        series.grid = {settings.t_max};
        series.counts = {0};
        return series;
    }
    series.grid = default_grid(settings.t_max, settings.grid_points);
    switch (series.mode) {
    case CensusMode::matrix_n2:
        series.counts = matrix_census_n2(p, series.grid, settings.threads);
        break;
    case CensusMode::matrix_generic:
        series.counts = matrix_census_generic(p, series.grid, settings.threads);
        break;
    case CensusMode::quaternion_order:
        series.counts = order_census_quaternion(*problem.order, p, series.grid, settings.threads);
        break;
    }
    return series;
}

std::string census_csv(std::vector<ConvergenceRow> const & rows)
{
    std::string text = "T,count,count_over_Tm,predicted_C,ratio\n";
    for (auto const & r : rows) {
        text += fmt12(to_real(r.T));
        text += ',' + std::to_string(r.count);
        text += ',' + fmt12(r.count_over_Tm);
        text += ',' + fmt12(r.predicted_C);
        text += ',' + fmt12(r.ratio);
        text += '\n';
    }
    return text;
}

int run_pipeline(std::string const & command, ProblemSpec const & spec, Overrides const & overrides,
                 std::ostream & out, std::ostream & err)
{
    try {
        bool known = false;
        for (auto const * c : commands)
            known = known || command == c;
        if (!known)
            throw Error(Reason::invalid_argument, "unknown command " + command);

        CensusSettings settings = spec.census;
        if (overrides.t_max)
            settings.t_max = *overrides.t_max;
        if (overrides.grid_points)
            settings.grid_points = *overrides.grid_points;
        if (overrides.threads)
            settings.threads = *overrides.threads;
        check_settings(settings);

        Problem pb = prepare(spec);
        auto infeasible = [&] {
            return Error(Reason::infeasible_division_prime,
                         "p is reducible over Q_" + std::to_string(*pb.infeasible_prime)
                             + ", a division prime of the algebra; the census is empty");
        };

        if (command == "invariants") {
            print_invariants(pb.invariants, out);
        } else if (command == "local") {
            print_local(pb.profiles, out);
        } else if (command == "constant") {
            if (!pb.constant)
                throw infeasible();
            print_constant(*pb.constant, out);
        } else {
            auto series = run_census(pb, settings);
            unsigned n = spec.polynomial.degree();
            unsigned m = n * (n - 1) / 2;
            auto rows = convergence_table(series, pb.constant ? &*pb.constant : nullptr, m);
            std::string csv = census_csv(rows);
            if (command == "census" && !overrides.out_path)
                out << csv;
            if (overrides.out_path)
                write_file(*overrides.out_path, csv);
            if (command == "verify") {
                out << "mode " << mode_name(series.mode) << '\n';
                if (pb.constant)
                    out << "C " << fmt6(pb.constant->C) << "  m " << m << '\n';
                print_table(rows, out);
            }
            if (!pb.constant)
                throw infeasible();
        }
        out.flush();
        return 0;
    } catch (Error const & e) {
        out.flush();
        err << e.machine_line() << '\n';
        return exit_code(e.reason());
    }
}

} // namespace cpcensus
