#pragma once

// group-theoretic side of the classification: order formulas, p-adic
// valuations, Zsigmondy primes, the Singer/semilinear construction, a
// deterministic stabilizer chain for matrix groups on F_q^d, the
// transitive-subgroup dichotomy, integer obstruction certificates, and the
// exhaustive non-embedding search for SL_2(F_13) in GL_3(F_9)

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "scat/matfq.hpp"

namespace scat {

using bigint = boost::multiprecision::cpp_int;

bigint order_gl(uint32_t d, uint64_t q);
bigint order_sl(uint32_t d, uint64_t q);
bigint order_sp4(uint64_t Q); // Q^4 (Q^2 - 1)(Q^4 - 1)
bigint order_sp(uint32_t e, uint64_t Q); // even e: Q^{(e/2)^2} prod (Q^{2i} - 1)
bigint order_gammal1(uint32_t d, uint64_t q); // d (q^d - 1)

// c * e(e-1)/2, the p-adic valuation of |SL_e(F_{p^c})|
uint64_t vp_sl(uint32_t e, uint32_t c, uint64_t p);

uint32_t vp_bigint(bigint x, const bigint &p);

// smallest prime dividing b^n - 1 but no earlier b^t - 1; nullopt on the
// classical exception cases
std::optional<uint64_t> zsigmondy(uint64_t b, uint32_t n);

struct matrix_group {
  field_ptr F;
  size_t li = 1;  // layer the entries live at; q = cardinality(li)
  uint32_t d = 0;
  std::vector<matrix> gens;

  uint64_t q() const { return F->cardinality(li); }
};

// validates shapes and invertibility
matrix_group make_matrix_group(field_ptr F, size_t li, std::vector<matrix> gens);

// deterministic Schreier-Sims chain on F_q^d with base e_1, ..., e_d;
// construction stops as soon as the order provably exceeds max_order
class stab_chain {
public:
  stab_chain(const matrix_group &G, uint64_t max_order);

  bool complete() const { return !aborted_; }
  uint64_t order() const; // SearchIncomplete when the cap was hit
  bool contains(const matrix &g) const;

private:
  struct level {
    uint64_t beta = 0;
    std::vector<uint64_t> orbit;
    std::unordered_map<uint64_t, uint32_t> index; // point -> orbit position
    std::vector<matrix> reps, rep_invs;           // reps[i] maps beta to orbit[i]
    std::vector<matrix> gens;
  };

  const field_ctx &F_;
  size_t li_;
  uint32_t d_;
  uint64_t cap_;
  bool aborted_ = false;
  std::vector<level> levels_;

  void add_generator(size_t l, const matrix &g);
  void process(size_t l);
  bool over_cap() const;
};

uint64_t default_group_order_cap(); // SCATTER_MAX_GROUP_ORDER or 2^30

uint64_t group_order(const matrix_group &G); // BudgetExceeded past the cap
std::optional<uint64_t> group_order_capped(const matrix_group &G, uint64_t cap);
bool is_transitive(const matrix_group &G); // orbit of e_1 covers all nonzero vectors

// two generators: multiplication by a generator of F_{q^d}^* and the q-power
// Frobenius, both as d x d matrices over F_q; order d (q^d - 1)
matrix_group singer_gammal1(uint32_t d, uint64_t q);

enum class transitive_class { contains_sl, sub_gammal1, inconclusive };

struct classification {
  transitive_class verdict = transitive_class::inconclusive;
  uint64_t order = 0;
  nlohmann::json detail; // conjugator or membership evidence
  nlohmann::json to_json() const;
};

// the dichotomy for transitive G <= GL_d(F_q), d an odd prime, q odd:
// either SL_d <= G or G lies in a conjugate of the Singer normalizer
classification classify_transitive(const matrix_group &G);

struct obstruction_report {
  std::string case_label; // Case1 | Case2 | Sp4 | SL2Singer | Sporadic
  uint64_t p = 0;
  uint32_t a = 0, d = 0, e = 0;
  nlohmann::json witness;
  bool obstruction_holds = false;
  nlohmann::json to_json() const;
};

// integer certificates for every subfield shape e: valuation comparisons,
// Zsigmondy divisibility, the symplectic order check, the Singer
// intersection for e = 2, and the sporadic pointer
std::vector<obstruction_report> proposition_obstructions(uint64_t p, uint32_t a,
                                                         uint32_t d);

struct embed_certificate {
  uint64_t class_reps = 0;
  uint64_t b_candidates = 0;
  uint64_t pairs = 0;
  uint64_t order_filtered = 0; // pairs surviving the element-order filter
  uint64_t chain_runs = 0;
  uint64_t hits = 0;
  bool no_embedding = false;
  bool control_hit = false; // the concrete SL_2(F_13) pair validates the pipeline
  nlohmann::json facts;     // step (i) integers and related witnesses
  nlohmann::json to_json() const;
};

embed_certificate no_embedding_sl2_13_in_gl3_9(unsigned threads = 0);

} // namespace scat
