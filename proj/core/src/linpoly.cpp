#include "scat/linpoly.hpp"

namespace scat {

lin_poly make_lin_poly(field_ptr F, uint32_t layer, std::vector<uint64_t> coeffs)
{
  if (layer < 1 || layer >= F->num_layers())
    fail(errc::layer_mismatch, "coefficient layer out of range");
  uint64_t Q = F->cardinality(layer);
  for (uint64_t c : coeffs)
    if (c >= Q)
      fail(errc::bad_argument, "coefficient code out of range");
  while (!coeffs.empty() && coeffs.back() == 0u)
    coeffs.pop_back();
  return {std::move(F), layer, std::move(coeffs)};
}

uint32_t lin_degree(const lin_poly &l)
{
  if (l.is_zero())
    fail(errc::zero_polynomial, "linearized degree of the zero polynomial");
  return static_cast<uint32_t>(l.coeffs.size() - 1);
}

uint64_t evaluate(const lin_poly &l, size_t x_layer, uint64_t x)
{
  if (x_layer < l.layer)
    fail(errc::layer_mismatch, "evaluation point below the coefficient layer");
  const field_ctx &F = *l.F;
  uint64_t acc = 0u;
  uint64_t xi = x;
  for (size_t i = 0; i < l.coeffs.size(); ++i) {
    if (l.coeffs[i])
      acc = F.add(x_layer, acc, F.mul(x_layer, l.coeffs[i], xi));
    xi = F.frob(x_layer, xi, l.base_layer(), 1);
  }
  return acc;
}

field_elem evaluate(const lin_poly &l, const field_elem &x)
{
  if (x.ctx.get() != l.F.get())
    fail(errc::layer_mismatch, "different field contexts");
  return {l.F, x.layer, evaluate(l, x.layer, x.code)};
}

static void check_same_context(const lin_poly &a, const lin_poly &b)
{
  if (a.F.get() != b.F.get() || a.layer != b.layer)
    fail(errc::layer_mismatch, "different field contexts");
}

lin_poly lp_add(const lin_poly &a, const lin_poly &b)
{
  check_same_context(a, b);
  const field_ctx &F = *a.F;
  std::vector<uint64_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0u);
  for (size_t i = 0; i < c.size(); ++i) {
    uint64_t x = i < a.coeffs.size() ? a.coeffs[i] : 0u;
    uint64_t y = i < b.coeffs.size() ? b.coeffs[i] : 0u;
    c[i] = F.add(a.layer, x, y);
  }
  return make_lin_poly(a.F, a.layer, std::move(c));
}

lin_poly lp_sub(const lin_poly &a, const lin_poly &b)
{ return lp_add(a, lp_scale(b, b.F->neg(b.layer, 1u))); }

lin_poly lp_scale(const lin_poly &a, uint64_t c)
{
  const field_ctx &F = *a.F;
  std::vector<uint64_t> out(a.coeffs.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = F.mul(a.layer, a.coeffs[i], c);
  return make_lin_poly(a.F, a.layer, std::move(out));
}

lin_poly compose(const lin_poly &a, const lin_poly &b)
{
  check_same_context(a, b);
  if (a.is_zero() || b.is_zero())
    return make_lin_poly(a.F, a.layer, {});
  const field_ctx &F = *a.F;
  size_t la = a.coeffs.size(), lb = b.coeffs.size();
  std::vector<uint64_t> c(la + lb - 1, 0u);
  for (size_t i = 0; i < la; ++i) {
    if (a.coeffs[i] == 0u)
      continue;
    for (size_t j = 0; j < lb; ++j) {
      if (b.coeffs[j] == 0u)
        continue;
      uint64_t tw = F.frob(a.layer, b.coeffs[j], a.base_layer(), static_cast<int64_t>(i));
      c[i + j] = F.add(a.layer, c[i + j], F.mul(a.layer, a.coeffs[i], tw));
    }
  }
  return make_lin_poly(a.F, a.layer, std::move(c));
}

matrix linear_map_matrix(const lin_poly &l, size_t target_li)
{
  if (target_li < l.layer || target_li >= l.F->num_layers())
    fail(errc::layer_mismatch, "target layer out of range");
  const field_ctx &F = *l.F;
  size_t b = l.base_layer();
  uint32_t N = F.abs_degree(target_li) / F.abs_degree(b);
  matrix A(N, N);
  for (uint32_t j = 0; j < N; ++j) {
    uint64_t img = evaluate(l, target_li, F.basis_code(target_li, b, j));
    auto cs = F.coords(target_li, img, b);
    for (uint32_t i = 0; i < N; ++i)
      A.at(i, j) = static_cast<uint32_t>(cs[i]);
  }
  return A;
}

uint32_t kernel_dim(const lin_poly &l, size_t target_li)
{
  matrix A = linear_map_matrix(l, target_li);
  return A.cols - mat_rank(*l.F, l.base_layer(), std::move(A));
}

uint64_t root_count(const lin_poly &l, size_t target_li)
{
  uint64_t q = l.q();
  uint32_t k = kernel_dim(l, target_li);
  uint64_t n = 1u;
  for (uint32_t i = 0; i < k; ++i)
    n *= q;
  return n;
}

nlohmann::json lin_poly_to_json(const lin_poly &l)
{
  nlohmann::json j;
  j["field"] = l.F->describe();
  j["coeff_layer"] = l.layer;
  nlohmann::json cs = nlohmann::json::array();
  for (uint64_t c : l.coeffs)
    cs.push_back(element_to_json(*l.F, l.layer, c));
  j["coeffs"] = cs;
  return j;
}

lin_poly lin_poly_from_json(const nlohmann::json &j, uint64_t table_limit)
{
  if (!j.contains("field"))
    fail(errc::parse_error, "polynomial descriptor lacks \"field\"");
  return lin_poly_from_json(field_ctx::from_json(j.at("field"), table_limit), j);
}

lin_poly lin_poly_from_json(field_ptr F, const nlohmann::json &j)
{
  if (!j.contains("coeff_layer") || !j.contains("coeffs"))
    fail(errc::parse_error, "polynomial descriptor lacks \"coeff_layer\" or \"coeffs\"");
  uint32_t layer = j.at("coeff_layer").get<uint32_t>();
  if (layer < 1 || layer >= F->num_layers())
    fail(errc::parse_error, "coeff_layer out of range");
  const nlohmann::json &cs = j.at("coeffs");
  if (!cs.is_array())
    fail(errc::parse_error, "\"coeffs\" must be an array");
  std::vector<uint64_t> codes;
  for (auto const &c : cs)
    codes.push_back(element_from_json(*F, layer, c));
  return make_lin_poly(std::move(F), layer, std::move(codes));
}

} // namespace scat
