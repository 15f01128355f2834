#pragma once

// Finite field towers F_p = L_0 < L_1 < ... < L_k with deterministic moduli.
// Elements are stored as integer codes: the little-endian base-p digit vector
// of an element with respect to the nested product basis, packed into a
// uint64_t.  A lower layer sits inside a higher one with the same code, so
// embeddings are re-tags.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "scat/errors.hpp"

namespace scat {

class field_ctx;
using field_ptr = std::shared_ptr<const field_ctx>;

struct layer_info {
  uint32_t degree;      // over the previous layer
  uint32_t abs_degree;  // over F_p
  uint64_t cardinality; // p^abs_degree
  std::vector<uint64_t> modulus; // monic, codes over previous layer, length degree+1

  bool has_tables = false;
  uint64_t generator = 0; // code of the sampled multiplicative generator
  std::vector<uint32_t> exp; // exp[i] = generator^i, size cardinality-1
  std::vector<uint32_t> log; // log[code], size cardinality, log[0] unused
};

class field_ctx {
public:
  static constexpr uint64_t default_table_limit = uint64_t{1} << 20;

  uint64_t p() const { return p_; }
  size_t num_layers() const { return layers_.size(); } // includes prime layer 0
  size_t top_layer() const { return layers_.size() - 1; }

  const layer_info &layer(size_t li) const { return layers_.at(li); }
  uint64_t cardinality(size_t li) const { return layers_.at(li).cardinality; }
  uint32_t abs_degree(size_t li) const { return layers_.at(li).abs_degree; }

  // finds the layer of the given absolute degree or throws layer_mismatch
  size_t layer_of_abs_degree(uint32_t n) const;

  // ---- arithmetic on codes at a layer ----
  uint64_t add(size_t li, uint64_t a, uint64_t b) const;
  uint64_t sub(size_t li, uint64_t a, uint64_t b) const;
  uint64_t neg(size_t li, uint64_t a) const;
  uint64_t mul(size_t li, uint64_t a, uint64_t b) const;
  uint64_t inv(size_t li, uint64_t a) const;
  uint64_t pow(size_t li, uint64_t a, uint64_t e) const;

  // a^(q^k) with q = cardinality(base_li); base_li <= li; k may be negative
  uint64_t frob(size_t li, uint64_t a, size_t base_li, int64_t k) const;

  // multiplicative order (cardinality must admit uint64 factorization; any layer)
  uint64_t mult_order(size_t li, uint64_t a) const;

  // ---- coordinates ----
  // F_q-coordinates of a layer-li code w.r.t. the nested basis, q = cardinality(base_li)
  std::vector<uint64_t> coords(size_t li, uint64_t code, size_t base_li) const;
  uint64_t from_coords(size_t li, const std::vector<uint64_t> &cs, size_t base_li) const;
  // basis vector with a 1 in F_q-coordinate j
  uint64_t basis_code(size_t li, size_t base_li, size_t j) const;

  // ---- construction / serialization ----
  static field_ptr make(uint64_t p, const std::vector<uint32_t> &degrees,
                        uint64_t table_limit = default_table_limit);
  static field_ptr make_with_moduli(uint64_t p,
                                    const std::vector<std::vector<uint64_t>> &moduli,
                                    uint64_t table_limit = default_table_limit);

  nlohmann::json describe() const;
  // copy of base's tower through a prefix layer with further deterministic steps
  static field_ptr make_extended(const field_ctx &base, size_t through_layer,
                                 const std::vector<uint32_t> &extra_degrees,
                                 uint64_t table_limit = default_table_limit);

  static field_ptr from_json(const nlohmann::json &j,
                             uint64_t table_limit = default_table_limit);

  // true if other is built over the same prime with identical moduli on the
  // first `layers` extension steps
  bool same_prefix(const field_ctx &other, size_t layers) const;

private:
  field_ctx() = default;

  void append_layer(uint32_t degree, uint64_t table_limit);
  void append_layer_with_modulus(const std::vector<uint64_t> &modulus,
                                 uint64_t table_limit);
  void finish_layer(layer_info &L, uint64_t table_limit);

  uint64_t mul_generic(size_t li, uint64_t a, uint64_t b) const;

  uint64_t p_ = 0;
  std::vector<layer_info> layers_;
};

// element handle with value semantics
struct field_elem {
  field_ptr ctx;
  uint32_t layer = 0;
  uint64_t code = 0;

  bool is_zero() const { return code == 0; }

  friend bool operator==(const field_elem &a, const field_elem &b)
  {
    return a.layer == b.layer && a.code == b.code && a.ctx.get() == b.ctx.get();
  }
};

field_ptr make_field(uint64_t p, const std::vector<uint32_t> &degrees,
                     uint64_t table_limit = field_ctx::default_table_limit);

field_elem embed(const field_elem &x, uint32_t to_layer);

// x^(q^k) with q the cardinality of base_layer (default: the prime field)
field_elem frobenius(const field_elem &x, int64_t k, uint32_t base_layer = 0);

nlohmann::json element_to_json(const field_ctx &F, size_t li, uint64_t code);
uint64_t element_from_json(const field_ctx &F, size_t li, const nlohmann::json &j);

} // namespace scat
