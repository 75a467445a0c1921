#ifndef CPCENSUS_ERROR_HPP
#define CPCENSUS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpcensus {

/*
 * Closed set of failure reasons. Every error that can escape the pipeline
 * carries exactly one of these; the CLI prints its code and maps it to an
 * exit status (2 spec error, 3 hypothesis violation, 4 infeasible).
 */
enum class Reason {
    // spec errors
    spec_unreadable,
    spec_malformed,
    order_basis_required,
    field_invariants_required,
    unsupported_degree,
    invalid_argument,
    guard_exceeded,
    // hypothesis violations
    reducible_polynomial,
    irreducibility_unverified,
    not_integrally_closed,
    definite_algebra,
    order_not_ring,
    order_not_integral,
    order_not_maximal,
    fixture_mismatch,
    // infeasible problem
    infeasible_division_prime,
};

std::string_view reason_code(Reason r);
int exit_code(Reason r);

class Error : public std::runtime_error {
    Reason reason_;

  public:
    Error(Reason r, std::string const & detail);

    Reason reason() const noexcept { return reason_; }

    /* "reason=<code> detail=<text>", single line */
    std::string machine_line() const;
};

} // namespace cpcensus

#endif
