#ifndef CPCENSUS_PIPELINE_HPP
#define CPCENSUS_PIPELINE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cpcensus/census.hpp"
#include "cpcensus/constant.hpp"
#include "cpcensus/number_field.hpp"
#include "cpcensus/poly.hpp"
#include "cpcensus/quaternion.hpp"

namespace cpcensus {

struct CensusSettings
{
    Rational t_max = 100;
    unsigned grid_points = 6;
    unsigned threads = 1;
};

struct ProblemSpec
{
    MonicIntPolynomial polynomial = MonicIntPolynomial::from_ints({1, 0, 1});
    AlgebraSpec algebra;
    std::optional<InvariantsFixture> field_invariants;
    CensusSettings census;
    std::optional<std::uint64_t> irreducibility_certificate;
};

/*
 * JSON problem spec. Integers may be JSON numbers or decimal strings;
 * rationals are strings such as "3/2". Error(spec_malformed) on any schema
 * violation, Error(order_basis_required) for a quaternion algebra without a basis.
 */
ProblemSpec parse_spec(std::string const & json_text);
ProblemSpec load_spec(std::string const & path); /* adds Error(spec_unreadable) */

/* "12", "-3", "7/2"; Error(invalid_argument) otherwise. */
Rational parse_rational(std::string const & text);

struct Overrides
{
    std::optional<Rational> t_max;
    std::optional<unsigned> grid_points;
    std::optional<unsigned> threads;
    std::optional<std::string> out_path;
};

/* Everything downstream of the spec, computed once the hypotheses hold. */
struct Problem
{
    ProblemSpec spec;
    FieldInvariants invariants;
    std::vector<LocalProfile> profiles;
    std::optional<QuaternionOrder> order;
    std::optional<AsymptoticConstant> constant; /* empty when a division prime is infeasible */
    std::optional<std::uint64_t> infeasible_prime;
};

/* Checks irreducibility, maximality of Z[x]/(p), the order, and builds the local data. */
Problem prepare(ProblemSpec const & spec);

CensusSeries run_census(Problem const & problem, CensusSettings const & settings);

/* T,count,count_over_Tm,predicted_C,ratio with 12 significant digits and LF endings. */
std::string census_csv(std::vector<ConvergenceRow> const & rows);

inline constexpr char const * commands[] = {"invariants", "local", "constant", "census", "verify"};

/*
 * Runs one command. Reports go to out; a failure prints exactly one
 * "reason=<code> detail=<text>" line to err. Returns the exit status:
 * 0 ok, 2 spec error, 3 hypothesis violation, 4 infeasible problem.
 */
int run_pipeline(std::string const & command, ProblemSpec const & spec, Overrides const & overrides,
                 std::ostream & out, std::ostream & err);

} // namespace cpcensus

#endif
