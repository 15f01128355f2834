#pragma once

// the 2-dimensional rank-metric code spanned by x and a scattered polynomial,
// with brute-force verification of its minimum rank distance

#include "scat/scatter.hpp"

namespace scat {

struct rank_code {
  lin_poly l;     // second basis polynomial alongside x
  uint32_t n = 0; // extension degree of the coefficient layer over base q
};

// requires l scattered of index 0 over its own layer; NotScattered otherwise
rank_code build_code(const lin_poly &l, const run_limits &lim = {});

struct rank_report {
  uint64_t q = 0;
  uint32_t n = 0;
  uint32_t min_rank = 0;
  bool is_mrd = false;
  uint64_t codewords = 0;       // q^{2n}
  uint64_t classes_checked = 0; // projective (a : b) classes
  nlohmann::json to_json() const;
};

// minimum rank over the nonzero codewords a*l + b*x
rank_report min_rank_distance(const rank_code &C, const run_limits &lim = {});

} // namespace scat
