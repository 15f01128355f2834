#pragma once

// scatteredness decisions over extension layers, t-normalization, index
// shifts, and per-m exceptionality scans

#include <cstdint>
#include <vector>

#include "scat/linpoly.hpp"

namespace scat {

struct run_limits {
  uint64_t max_specializations = uint64_t{1} << 20;
  unsigned threads = 0; // 0 = hardware concurrency
};

// reads SCATTER_MAX_SPECIALIZATIONS and SCATTER_THREADS when set
run_limits default_limits();

uint32_t scatter_degree(const lin_poly &l, uint32_t t);

struct normalize_result {
  lin_poly poly;
  uint32_t t_prime = 0;
  nlohmann::json log = nlohmann::json::array(); // one entry per applied step
};

// monic, zero x^(q^t') coefficient, nonzero linear term when t' > 0;
// kernel-dimension multisets correspond under the logged bijections
normalize_result t_normalize(const lin_poly &l, uint32_t t);

struct scatter_profile {
  uint64_t q = 0;
  uint32_t n = 0, m = 0, t = 0;
  std::vector<std::pair<uint32_t, uint64_t>> histogram; // (kernel dim, count), ascending
  uint32_t max_dim = 0;

  uint64_t specializations() const;
  nlohmann::json to_json() const;
};

// tower layer holding F_{q^{nm}} for this polynomial
size_t target_layer(const lin_poly &l, uint32_t m);

// same polynomial over a tower that shares l's prefix through its coefficient
// layer and adds a degree-m step on top (m >= 2); codes transfer verbatim
lin_poly extend_for_m(const lin_poly &l, uint32_t m,
                      uint64_t table_limit = field_ctx::default_table_limit);

// precomputed data for the specialization family l - s0 x^(q^t) on layer T:
// the matrix of l and the twisted basis images; kernel_dim_at is const and
// safe to share across threads
struct specialization_ctx {
  lin_poly l;
  size_t T = 0;
  uint32_t t = 0;
  uint32_t N = 0;
  matrix A;
  std::vector<uint64_t> cj;

  uint32_t kernel_dim_at(uint64_t s0) const;
};

specialization_ctx make_specialization_ctx(const lin_poly &l, size_t T, uint32_t t);

bool is_scattered(const lin_poly &l, uint32_t m, uint32_t t,
                  const run_limits &lim = {});

scatter_profile root_count_profile(const lin_poly &l, uint32_t m, uint32_t t,
                                   const run_limits &lim = {});

// l(x^{q^{nm-t}}), checked scattered on input and index-0 scattered on output
lin_poly index_shift(const lin_poly &l, uint32_t m, uint32_t t,
                     const run_limits &lim = {});

struct scan_report {
  uint64_t q = 0;
  uint32_t n = 0, t = 0, m_max = 0;
  std::vector<std::pair<uint32_t, bool>> entries; // (m, scattered)
  nlohmann::json to_json() const; // carries the evidence-not-proof label
};

scan_report exceptional_scan(const lin_poly &l, uint32_t t, uint32_t m_max,
                             const run_limits &lim = {});

} // namespace scat
