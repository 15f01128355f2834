#pragma once

// place-level Frobenius data for the specialization family l - s x^(q^t):
// orbit types from factor degrees, the fixed-point/rank test, the
// place-by-place equivalence report, Newton-polygon ramification at s = 0
// and s = infinity, and exact monodromy for the family attached to l = x

#include <cstdint>
#include <vector>

#include "scat/matfq.hpp"
#include "scat/scatter.hpp"

namespace scat {

// throws NotNormalized unless l is monic with zero x^(q^t) coefficient and,
// for t >= 1, a nonzero linear term
void require_t_normalized(const lin_poly &l, uint32_t t);

// (l/x - s0 x^(q^t - 1)) as a univariate polynomial over the target layer
up::poly specialized_poly(const lin_poly &l, size_t T, uint32_t t, uint64_t s0);

struct orbit_type {
  uint64_t s0 = 0;
  std::vector<uint32_t> degrees; // irreducible-factor degrees, ascending, with multiplicity
  bool ramified = false;         // generic degree dropped at this specialization
  bool degenerate = false;       // specialized polynomial is a nonzero constant
  nlohmann::json to_json() const;
};

orbit_type orbit_type_at(const lin_poly &l, uint32_t t, uint32_t m, uint64_t s0);

// rank(M - Id) >= d - 1; Singular unless M is invertible
bool rank_condition(const field_ctx &F, size_t li, const matrix &M);

// q^(dim ker(M - Id)) - 1, the nonzero fixed vectors; Singular unless invertible
uint64_t fixed_points_nonzero(const field_ctx &F, size_t li, const matrix &M);

struct equivalence_place {
  uint64_t s0 = 0;
  uint32_t kernel_dim = 0;
  uint64_t fixed_roots = 0; // distinct roots of the specialized polynomial in the layer
  bool dropped = false;
  bool consistent = true;
};

struct equivalence_report {
  uint64_t q = 0;
  uint32_t n = 0, m = 0, t = 0, d = 0;
  uint64_t places = 0;
  uint64_t inconsistent = 0;
  uint64_t dropped = 0;
  bool all_consistent = true;
  bool global_bound_holds = true; // fixed_roots <= q - 1 at every place
  bool scattered = false;         // independent scatteredness verdict
  bool agree = false;             // global_bound_holds == scattered
  std::vector<equivalence_place> detail; // populated when the layer is small
  nlohmann::json to_json() const;
};

equivalence_report verify_equivalence(const lin_poly &l, uint32_t t, uint32_t m,
                                      const run_limits &lim = {},
                                      uint64_t detail_cap = 4096);

struct ram_entry {
  int64_t slope_num = 0;  // reduced, sign carried here
  uint64_t slope_den = 1;
  uint64_t width = 0;     // horizontal extent of the segment
  uint64_t e = 1;         // ramification index (tame: slope denominator)
  uint64_t multiplicity = 1;
  bool wild = false;      // p divides e; e is then denominator x residual multiplicity
};

struct ramification_profile {
  std::string place;      // "s=0" or "s=inf"
  std::vector<ram_entry> entries;
  uint64_t total_degree = 0; // sum of e * multiplicity
  bool q_divisible = false;  // some e divisible by the characteristic
  nlohmann::json to_json() const;
};

ramification_profile newton_ramification(const lin_poly &l, uint32_t t, bool at_infinity);

struct kummer_report {
  uint64_t q = 0;
  uint32_t n = 0, m = 0, t = 0;
  uint64_t geom_order = 0;          // q^t - 1
  uint64_t arith_order = 0;         // geom * constant-field degree
  uint32_t const_field_degree = 0;  // t / gcd(t, nm)
  uint32_t frobenius_power = 0;     // nm mod t, the power of Frobenius adjoined
  matrix singer;                    // multiplication by a generator of F_{q^t}*
  matrix frobenius_mat;             // q-power Frobenius on F_{q^t} in the same basis
  bool scattered = false;           // x at this (m, t), decided by the scatter module
  bool groups_differ = false;       // arith != geom
  bool cor_holds = false;           // scattered == groups_differ
  bool iff_reliable = false;        // the biconditional is a theorem only for prime t >= 2
  field_ptr F;                      // tower the matrices live in (q at its layer 1)
  nlohmann::json to_json() const;
};

kummer_report kummer_monodromy(uint64_t q, uint32_t n, uint32_t m, uint32_t t,
                               const run_limits &lim = {});

} // namespace scat
