#include "cpcensus/error.hpp"

namespace cpcensus {

std::string_view reason_code(Reason r)
{
    switch (r) {
    case Reason::spec_unreadable: return "spec_unreadable";
    case Reason::spec_malformed: return "spec_malformed";
    case Reason::order_basis_required: return "order_basis_required";
    case Reason::field_invariants_required: return "field_invariants_required";
    case Reason::unsupported_degree: return "unsupported_degree";
    case Reason::invalid_argument: return "invalid_argument";
    case Reason::guard_exceeded: return "guard_exceeded";
    case Reason::reducible_polynomial: return "reducible_polynomial";
    case Reason::irreducibility_unverified: return "irreducibility_unverified";
    case Reason::not_integrally_closed: return "not_integrally_closed";
    case Reason::definite_algebra: return "definite_algebra";
    case Reason::order_not_ring: return "order_not_ring";
    case Reason::order_not_integral: return "order_not_integral";
    case Reason::order_not_maximal: return "order_not_maximal";
    case Reason::fixture_mismatch: return "fixture_mismatch";
    case Reason::infeasible_division_prime: return "infeasible_division_prime";
    }
    return "unknown";
}

int exit_code(Reason r)
{
    switch (r) {
    case Reason::reducible_polynomial:
    case Reason::irreducibility_unverified:
    case Reason::not_integrally_closed:
    case Reason::definite_algebra:
    case Reason::order_not_ring:
    case Reason::order_not_integral:
    case Reason::order_not_maximal:
    case Reason::fixture_mismatch:
        return 3;
    case Reason::infeasible_division_prime:
        return 4;
    default:
        return 2;
    }
}

Error::Error(Reason r, std::string const & detail)
    : std::runtime_error(std::string(reason_code(r)) + ": " + detail), reason_(r)
{
}

std::string Error::machine_line() const
{
    std::string what_text = what();
    auto colon = what_text.find(": ");
    std::string detail = colon == std::string::npos ? what_text : what_text.substr(colon + 2);
    for (auto & c : detail)
        if (c == '\n')
            c = ' ';
    return "reason=" + std::string(reason_code(reason_)) + " detail=" + detail;
}

} // namespace cpcensus
