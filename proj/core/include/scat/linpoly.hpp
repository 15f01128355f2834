#pragma once

// q-linearized polynomials sum a_i x^(q^i)
//
// Coefficients live at a tower layer; the designated base field F_q is the
// layer directly below it. Towers insert a degree-1 step where needed, so
// this convention loses no generality.

#include <cstdint>
#include <vector>

#include "scat/ff.hpp"
#include "scat/matfq.hpp"

namespace scat {

struct lin_poly {
  field_ptr F;
  uint32_t layer = 1;             // coefficient layer, >= 1
  std::vector<uint64_t> coeffs;   // a_0 .. a_r, trailing zeros trimmed, empty = zero

  uint32_t base_layer() const { return layer - 1; }
  uint64_t q() const { return F->cardinality(layer - 1); }
  bool is_zero() const { return coeffs.empty(); }
};

lin_poly make_lin_poly(field_ptr F, uint32_t layer, std::vector<uint64_t> coeffs);

// index of the top nonzero coefficient; ZeroPolynomial on the zero poly
uint32_t lin_degree(const lin_poly &l);

uint64_t evaluate(const lin_poly &l, size_t x_layer, uint64_t x);
field_elem evaluate(const lin_poly &l, const field_elem &x);

lin_poly lp_add(const lin_poly &a, const lin_poly &b);
lin_poly lp_sub(const lin_poly &a, const lin_poly &b);
lin_poly lp_scale(const lin_poly &a, uint64_t c);

// a after b: coefficients follow c_k = sum over i+j=k of a_i * b_j^(q^i)
lin_poly compose(const lin_poly &a, const lin_poly &b);

// matrix of u -> l(u) on the target layer in F_q-coordinates
matrix linear_map_matrix(const lin_poly &l, size_t target_li);

uint32_t kernel_dim(const lin_poly &l, size_t target_li);
uint64_t root_count(const lin_poly &l, size_t target_li);

nlohmann::json lin_poly_to_json(const lin_poly &l);
lin_poly lin_poly_from_json(const nlohmann::json &j, uint64_t table_limit = field_ctx::default_table_limit);
lin_poly lin_poly_from_json(field_ptr F, const nlohmann::json &j);

} // namespace scat
