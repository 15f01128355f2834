#include "scat/ff.hpp"

#include <algorithm>

#include "scat/intutil.hpp"
#include "scat/upoly.hpp"

namespace scat {

size_t field_ctx::layer_of_abs_degree(uint32_t n) const
{
  for (size_t li = 0; li < layers_.size(); ++li)
    if (layers_[li].abs_degree == n)
      return li;
  fail(errc::layer_mismatch,
       "no tower layer of absolute degree " + std::to_string(n));
}

uint64_t field_ctx::add(size_t li, uint64_t a, uint64_t b) const
{
  if (p_ == 2u)
    return a ^ b;
  if (li == 0 || layers_[li].abs_degree == 1) {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  uint64_t r = 0u, m = 1u;
  while (a | b) {
    uint64_t s = a % p_ + b % p_;
    if (s >= p_)
      s -= p_;
    r += s * m;
    a /= p_;
    b /= p_;
    m *= p_;
  }
  return r;
}

uint64_t field_ctx::neg(size_t li, uint64_t a) const
{
  if (p_ == 2u)
    return a;
  if (li == 0 || layers_[li].abs_degree == 1)
    return a == 0u ? 0u : p_ - a;

  uint64_t r = 0u, m = 1u;
  while (a) {
    uint64_t d = a % p_;
    if (d)
      r += (p_ - d) * m;
    a /= p_;
    m *= p_;
  }
  return r;
}

uint64_t field_ctx::sub(size_t li, uint64_t a, uint64_t b) const
{ return add(li, a, neg(li, b)); }

uint64_t field_ctx::mul(size_t li, uint64_t a, uint64_t b) const
{
  if (li == 0 || layers_[li].abs_degree == 1)
    return mulmod_u64(a, b, p_);

  const layer_info &L = layers_[li];
  if (L.has_tables) {
    if (a == 0u || b == 0u)
      return 0u;
    uint64_t Qm1 = L.cardinality - 1;
    uint64_t e = L.log[a] + L.log[b];
    if (e >= Qm1)
      e -= Qm1;
    return L.exp[e];
  }
  return mul_generic(li, a, b);
}

uint64_t field_ctx::mul_generic(size_t li, uint64_t a, uint64_t b) const
{
  const layer_info &L = layers_[li];
  size_t prev = li - 1;
  uint64_t Qs = layers_[prev].cardinality;
  uint32_t e = L.degree;

  std::vector<uint64_t> da(e, 0u), db(e, 0u);
  for (uint32_t i = 0; i < e; ++i) {
    da[i] = a % Qs;
    a /= Qs;
    db[i] = b % Qs;
    b /= Qs;
  }

  std::vector<uint64_t> res(2 * e - 1, 0u);
  for (uint32_t i = 0; i < e; ++i) {
    if (da[i] == 0u)
      continue;
    for (uint32_t j = 0; j < e; ++j) {
      if (db[j] == 0u)
        continue;
      res[i + j] = add(prev, res[i + j], mul(prev, da[i], db[j]));
    }
  }

  for (uint32_t d = 2 * e - 2; d >= e; --d) {
    uint64_t c = res[d];
    if (c) {
      res[d] = 0u;
      for (uint32_t j = 0; j < e; ++j)
        res[d - e + j] = sub(prev, res[d - e + j], mul(prev, c, L.modulus[j]));
    }
    if (d == e)
      break;
  }

  uint64_t out = 0u, m = 1u;
  for (uint32_t i = 0; i < e; ++i) {
    out += res[i] * m;
    m *= Qs;
  }
  return out;
}

uint64_t field_ctx::pow(size_t li, uint64_t a, uint64_t e) const
{
  uint64_t acc = 1u;
  while (e) {
    if (e & 1u)
      acc = mul(li, acc, a);
    a = mul(li, a, a);
    e >>= 1;
  }
  return acc;
}

uint64_t field_ctx::inv(size_t li, uint64_t a) const
{
  if (a == 0u)
    fail(errc::bad_argument, "inverse of zero");
  if (li == 0 || layers_[li].abs_degree == 1)
    return powmod_u64(a, p_ - 2, p_);

  const layer_info &L = layers_[li];
  if (L.has_tables) {
    uint64_t Qm1 = L.cardinality - 1;
    uint64_t l = L.log[a];
    return L.exp[l == 0u ? 0u : Qm1 - l];
  }
  return pow(li, a, L.cardinality - 2);
}

uint64_t field_ctx::frob(size_t li, uint64_t a, size_t base_li, int64_t k) const
{
  if (base_li > li)
    fail(errc::layer_mismatch, "frobenius base layer above element layer");

  uint32_t nb = layers_[base_li].abs_degree;
  uint32_t nl = layers_[li].abs_degree;
  uint32_t b = nl / nb; // tower layers divide each other
  int64_t kk = ((k % b) + b) % b;
  if (kk == 0 || a == 0u || a == 1u)
    return a;

  uint64_t q = layers_[base_li].cardinality;
  const layer_info &L = layers_[li];
  if (L.has_tables) {
    uint64_t Qm1 = L.cardinality - 1;
    uint64_t e = powmod_u64(q % Qm1, static_cast<uint64_t>(kk), Qm1);
    return L.exp[mulmod_u64(L.log[a], e, Qm1)];
  }

  // exact exponent q^kk < cardinality
  uint64_t e;
  if (!checked_pow_u64(q, static_cast<uint32_t>(kk), e))
    fail(errc::bad_argument, "frobenius exponent overflow");
  return pow(li, a, e);
}

uint64_t field_ctx::mult_order(size_t li, uint64_t a) const
{
  if (a == 0u)
    fail(errc::bad_argument, "multiplicative order of zero");
  uint64_t o = cardinality(li) - 1;
  for (auto const &[r, e] : factorization_u64(o)) {
    for (unsigned i = 0; i < e; ++i) {
      if (o % r == 0u && pow(li, a, o / r) == 1u)
        o /= r;
      else
        break;
    }
  }
  return o;
}

std::vector<uint64_t> field_ctx::coords(size_t li, uint64_t code, size_t base_li) const
{
  if (base_li > li)
    fail(errc::layer_mismatch, "coordinate base layer above element layer");
  uint64_t q = layers_[base_li].cardinality;
  size_t n = layers_[li].abs_degree / layers_[base_li].abs_degree;
  std::vector<uint64_t> out(n);
  for (size_t j = 0; j < n; ++j) {
    out[j] = code % q;
    code /= q;
  }
  return out;
}

uint64_t field_ctx::from_coords(size_t li, const std::vector<uint64_t> &cs, size_t base_li) const
{
  uint64_t q = layers_[base_li].cardinality;
  size_t n = layers_[li].abs_degree / layers_[base_li].abs_degree;
  if (cs.size() != n)
    fail(errc::bad_argument, "coordinate vector length mismatch");
  uint64_t code = 0u, m = 1u;
  for (size_t j = 0; j < n; ++j) {
    code += cs[j] * m;
    m *= q;
  }
  return code;
}

uint64_t field_ctx::basis_code(size_t li, size_t base_li, size_t j) const
{
  uint64_t q = layers_[base_li].cardinality;
  uint64_t code = 1u;
  for (size_t i = 0; i < j; ++i)
    code *= q;
  if (code >= cardinality(li))
    fail(errc::bad_argument, "basis index out of range");
  return code;
}

// ---- construction ----

void field_ctx::finish_layer(layer_info &L, uint64_t table_limit)
{
  size_t li = layers_.size(); // L will be pushed at this index
  layers_.push_back(L);
  layer_info &ref = layers_.back();

  if (ref.cardinality > table_limit || li == 0 || ref.abs_degree == 1)
    return;

  uint64_t Q = ref.cardinality;
  uint64_t Qm1 = Q - 1;
  auto pf = prime_factors_u64(Qm1);

  uint64_t g = 0u;
  for (uint64_t c = 1u; c < Q; ++c) {
    bool ok = true;
    for (uint64_t r : pf) {
      if (pow(li, c, Qm1 / r) == 1u) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = c;
      break;
    }
  }
  if (g == 0u)
    fail(errc::bad_argument, "no multiplicative generator found (modulus not irreducible?)");

  ref.generator = g;
  ref.exp.assign(Qm1, 0u);
  ref.log.assign(Q, 0u);
  uint64_t cur = 1u;
  for (uint64_t i = 0; i < Qm1; ++i) {
    ref.exp[i] = static_cast<uint32_t>(cur);
    ref.log[cur] = static_cast<uint32_t>(i);
    cur = mul(li, cur, g);
  }
  if (cur != 1u)
    fail(errc::bad_argument, "generator order defect (modulus not irreducible?)");
  ref.has_tables = true;
}

void field_ctx::append_layer_with_modulus(const std::vector<uint64_t> &modulus,
                                          uint64_t table_limit)
{
  if (modulus.size() < 2)
    fail(errc::degree_zero, "modulus of degree 0");
  if (modulus.back() != 1u)
    fail(errc::bad_argument, "modulus must be monic");

  size_t prev = layers_.size() - 1;
  for (uint64_t c : modulus)
    if (c >= layers_[prev].cardinality)
      fail(errc::bad_argument, "modulus coefficient out of range");

  up::poly f(modulus.begin(), modulus.end());
  if (!up::is_irreducible(*this, prev, f))
    fail(errc::bad_argument, "modulus is reducible");

  layer_info L;
  L.degree = static_cast<uint32_t>(modulus.size() - 1);
  L.abs_degree = layers_[prev].abs_degree * L.degree;
  uint64_t card;
  if (!checked_pow_u64(p_, L.abs_degree, card))
    fail(errc::bad_argument, "tower cardinality exceeds 2^63");
  L.cardinality = card;
  L.modulus = modulus;
  finish_layer(L, table_limit);
}

void field_ctx::append_layer(uint32_t degree, uint64_t table_limit)
{
  if (degree == 0)
    fail(errc::degree_zero, "extension degree 0");

  size_t prev = layers_.size() - 1;
  uint64_t Qs = layers_[prev].cardinality;

  uint64_t card;
  if (!checked_pow_u64(p_, layers_[prev].abs_degree * degree, card))
    fail(errc::bad_argument, "tower cardinality exceeds 2^63");

  // lexicographically least monic irreducible: compare (a_0, a_1, ...) with
  // a_0 most significant, each coefficient ordered by its integer code
  uint64_t total;
  if (!checked_pow_u64(Qs, degree, total))
    fail(errc::bad_argument, "tower cardinality exceeds 2^63");

  // degree >= 2 irreducibles have nonzero constant term; skip the a_0 = 0 block
  uint64_t start = 0;
  if (degree >= 2) {
    start = 1;
    for (uint32_t j = 0; j + 1 < degree; ++j)
      start *= Qs;
  }

  std::vector<uint64_t> modulus;
  for (uint64_t idx = start; idx < total; ++idx) {
    std::vector<uint64_t> coeffs(degree + 1, 0u);
    coeffs[degree] = 1u;
    uint64_t rem = idx;
    for (uint32_t i = 0; i < degree; ++i) {
      // a_i gets digit (degree-1-i): a_0 most significant
      uint64_t div = 1u;
      for (uint32_t j = 0; j + 1 < degree - i; ++j)
        div *= Qs;
      coeffs[i] = (rem / div) % Qs;
      rem %= div;
    }
    up::poly f(coeffs.begin(), coeffs.end());
    if (up::is_irreducible(*this, prev, f)) {
      modulus = coeffs;
      break;
    }
  }
  if (modulus.empty())
    fail(errc::bad_argument, "no irreducible modulus found");

  layer_info L;
  L.degree = degree;
  L.abs_degree = layers_[prev].abs_degree * degree;
  L.cardinality = card;
  L.modulus = modulus;
  finish_layer(L, table_limit);
}

field_ptr field_ctx::make(uint64_t p, const std::vector<uint32_t> &degrees,
                          uint64_t table_limit)
{
  if (!is_prime_u64(p))
    fail(errc::non_prime, "p = " + std::to_string(p));

  auto ctx = std::shared_ptr<field_ctx>(new field_ctx());
  ctx->p_ = p;

  layer_info prime;
  prime.degree = 1;
  prime.abs_degree = 1;
  prime.cardinality = p;
  ctx->finish_layer(prime, table_limit);

  for (uint32_t d : degrees)
    ctx->append_layer(d, table_limit);
  return ctx;
}

field_ptr field_ctx::make_with_moduli(uint64_t p,
                                      const std::vector<std::vector<uint64_t>> &moduli,
                                      uint64_t table_limit)
{
  if (!is_prime_u64(p))
    fail(errc::non_prime, "p = " + std::to_string(p));

  auto ctx = std::shared_ptr<field_ctx>(new field_ctx());
  ctx->p_ = p;

  layer_info prime;
  prime.degree = 1;
  prime.abs_degree = 1;
  prime.cardinality = p;
  ctx->finish_layer(prime, table_limit);

  for (auto const &m : moduli)
    ctx->append_layer_with_modulus(m, table_limit);
  return ctx;
}

bool field_ctx::same_prefix(const field_ctx &other, size_t layers) const
{
  if (p_ != other.p_)
    return false;
  if (layers >= layers_.size() || layers >= other.layers_.size())
    return false;
  for (size_t li = 1; li <= layers; ++li) {
    if (layers_[li].modulus != other.layers_[li].modulus)
      return false;
  }
  return true;
}

field_ptr field_ctx::make_extended(const field_ctx &base, size_t through_layer,
                                   const std::vector<uint32_t> &extra_degrees,
                                   uint64_t table_limit)
{
  if (through_layer >= base.layers_.size())
    fail(errc::layer_mismatch, "prefix layer out of range");

  auto ctx = std::shared_ptr<field_ctx>(new field_ctx());
  ctx->p_ = base.p_;

  layer_info prime;
  prime.degree = 1;
  prime.abs_degree = 1;
  prime.cardinality = base.p_;
  ctx->finish_layer(prime, table_limit);

  for (size_t li = 1; li <= through_layer; ++li)
    ctx->append_layer_with_modulus(base.layers_[li].modulus, table_limit);
  for (uint32_t d : extra_degrees)
    ctx->append_layer(d, table_limit);
  return ctx;
}

field_ptr make_field(uint64_t p, const std::vector<uint32_t> &degrees,
                     uint64_t table_limit)
{ return field_ctx::make(p, degrees, table_limit); }

field_elem embed(const field_elem &x, uint32_t to_layer)
{
  if (to_layer < x.layer)
    fail(errc::layer_mismatch, "embedding into a lower layer");
  if (to_layer >= x.ctx->num_layers())
    fail(errc::layer_mismatch, "embedding target layer does not exist");
  return {x.ctx, to_layer, x.code};
}

field_elem frobenius(const field_elem &x, int64_t k, uint32_t base_layer)
{
  return {x.ctx, x.layer, x.ctx->frob(x.layer, x.code, base_layer, k)};
}

// ---- serialization ----

nlohmann::json element_to_json(const field_ctx &F, size_t li, uint64_t code)
{
  if (li == 0)
    return code;
  uint64_t Qs = F.cardinality(li - 1);
  uint32_t e = F.layer(li).degree;
  nlohmann::json arr = nlohmann::json::array();
  for (uint32_t i = 0; i < e; ++i) {
    arr.push_back(element_to_json(F, li - 1, code % Qs));
    code /= Qs;
  }
  return arr;
}

uint64_t element_from_json(const field_ctx &F, size_t li, const nlohmann::json &j)
{
  if (li == 0) {
    if (!j.is_number_unsigned() && !j.is_number_integer())
      fail(errc::parse_error, "prime field element must be an integer");
    int64_t v = j.get<int64_t>();
    int64_t p = static_cast<int64_t>(F.p());
    v %= p;
    if (v < 0)
      v += p;
    return static_cast<uint64_t>(v);
  }
  if (!j.is_array())
    fail(errc::parse_error, "field element must be a coefficient array");
  uint32_t e = F.layer(li).degree;
  if (j.size() != e)
    fail(errc::parse_error,
         "coefficient array length " + std::to_string(j.size()) + " != layer degree " +
             std::to_string(e));
  uint64_t Qs = F.cardinality(li - 1);
  uint64_t code = 0u, m = 1u;
  for (uint32_t i = 0; i < e; ++i) {
    code += element_from_json(F, li - 1, j[i]) * m;
    m *= Qs;
  }
  return code;
}

nlohmann::json field_ctx::describe() const
{
  nlohmann::json j;
  j["p"] = p_;
  nlohmann::json degs = nlohmann::json::array();
  nlohmann::json mods = nlohmann::json::array();
  for (size_t li = 1; li < layers_.size(); ++li) {
    degs.push_back(layers_[li].degree);
    nlohmann::json m = nlohmann::json::array();
    for (uint64_t c : layers_[li].modulus)
      m.push_back(element_to_json(*this, li - 1, c));
    mods.push_back(m);
  }
  j["degrees"] = degs;
  j["moduli"] = mods;
  return j;
}

field_ptr field_ctx::from_json(const nlohmann::json &j, uint64_t table_limit)
{
  if (!j.contains("p"))
    fail(errc::parse_error, "field descriptor lacks \"p\"");
  uint64_t p = j.at("p").get<uint64_t>();
  if (!is_prime_u64(p))
    fail(errc::non_prime, "p = " + std::to_string(p));

  std::vector<uint32_t> degrees;
  if (j.contains("degrees"))
    degrees = j.at("degrees").get<std::vector<uint32_t>>();

  if (!j.contains("moduli"))
    return make(p, degrees, table_limit);

  auto ctx = std::shared_ptr<field_ctx>(new field_ctx());
  ctx->p_ = p;
  layer_info prime;
  prime.degree = 1;
  prime.abs_degree = 1;
  prime.cardinality = p;
  ctx->finish_layer(prime, table_limit);

  const nlohmann::json &mods = j.at("moduli");
  if (!mods.is_array() || (j.contains("degrees") && mods.size() != degrees.size()))
    fail(errc::parse_error, "moduli array does not match degrees");

  for (size_t i = 0; i < mods.size(); ++i) {
    const nlohmann::json &m = mods[i];
    if (!m.is_array() || m.size() < 2)
      fail(errc::parse_error, "modulus must be a coefficient array of degree >= 1");
    size_t prev = ctx->layers_.size() - 1;
    std::vector<uint64_t> codes;
    for (auto const &c : m)
      codes.push_back(element_from_json(*ctx, prev, c));
    if (!degrees.empty() && codes.size() != static_cast<size_t>(degrees[i]) + 1)
      fail(errc::parse_error, "modulus degree does not match declared degree");
    ctx->append_layer_with_modulus(codes, table_limit);
  }
  return ctx;
}

} // namespace scat
