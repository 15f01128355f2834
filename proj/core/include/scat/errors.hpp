#pragma once

#include <stdexcept>
#include <string>

namespace scat {

enum class errc {
  non_prime,
  degree_zero,
  not_prime_power,
  layer_mismatch,
  zero_polynomial,
  not_reducible,
  not_normalized,
  not_scattered,
  index_out_of_range,
  equal_degrees,
  singular_matrix,
  hypothesis_violation,
  budget_exceeded,
  zsigmondy_exception,
  bad_argument,
  parse_error,
  search_incomplete,
};

const char *errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc c, const std::string &what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c)
  {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string &what)
{ throw error(c, what); }

} // namespace scat
