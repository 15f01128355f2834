#include "scat/errors.hpp"

namespace scat {

const char *errc_name(errc c)
{
  switch (c) {
  case errc::non_prime:            return "NonPrime";
  case errc::degree_zero:          return "DegreeZero";
  case errc::not_prime_power:      return "NotPrimePower";
  case errc::layer_mismatch:       return "LayerMismatch";
  case errc::zero_polynomial:      return "ZeroPolynomial";
  case errc::not_reducible:        return "NotReducible";
  case errc::not_normalized:       return "NotNormalized";
  case errc::not_scattered:        return "NotScattered";
  case errc::index_out_of_range:   return "IndexOutOfRange";
  case errc::equal_degrees:        return "EqualDegrees";
  case errc::singular_matrix:      return "Singular";
  case errc::hypothesis_violation: return "HypothesisViolation";
  case errc::budget_exceeded:      return "BudgetExceeded";
  case errc::zsigmondy_exception:  return "ExceptionCase";
  case errc::bad_argument:         return "BadArgument";
  case errc::parse_error:          return "ParseError";
  case errc::search_incomplete:    return "SearchIncomplete";
  }
  return "UnknownError";
}

} // namespace scat
