#include "scat/upoly.hpp"

#include "scat/intutil.hpp"

namespace scat::up {

int deg(const poly &f)
{ return static_cast<int>(f.size()) - 1; }

void normalize(poly &f)
{
  while (!f.empty() && f.back() == 0u)
    f.pop_back();
}

poly add(const field_ctx &F, size_t li, const poly &a, const poly &b)
{
  poly r(std::max(a.size(), b.size()), 0u);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0u;
    uint64_t y = i < b.size() ? b[i] : 0u;
    r[i] = F.add(li, x, y);
  }
  normalize(r);
  return r;
}

poly sub(const field_ctx &F, size_t li, const poly &a, const poly &b)
{
  poly r(std::max(a.size(), b.size()), 0u);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0u;
    uint64_t y = i < b.size() ? b[i] : 0u;
    r[i] = F.sub(li, x, y);
  }
  normalize(r);
  return r;
}

poly mul(const field_ctx &F, size_t li, const poly &a, const poly &b)
{
  if (a.empty() || b.empty())
    return {};

  poly r(a.size() + b.size() - 1, 0u);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0u)
      continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0u)
        continue;
      r[i + j] = F.add(li, r[i + j], F.mul(li, a[i], b[j]));
    }
  }
  normalize(r);
  return r;
}

poly scale(const field_ctx &F, size_t li, const poly &a, uint64_t c)
{
  if (c == 0u)
    return {};
  poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = F.mul(li, a[i], c);
  normalize(r);
  return r;
}

poly monic(const field_ctx &F, size_t li, const poly &a)
{
  if (a.empty())
    return {};
  return scale(F, li, a, F.inv(li, a.back()));
}

std::pair<poly, poly> divmod(const field_ctx &F, size_t li, const poly &a, const poly &b)
{
  if (b.empty())
    fail(errc::bad_argument, "polynomial division by zero");

  poly rem = a;
  normalize(rem);
  int db = deg(b);
  if (deg(rem) < db)
    return {{}, rem};

  poly quot(deg(rem) - db + 1, 0u);
  uint64_t lead_inv = F.inv(li, b.back());
  for (int d = deg(rem); d >= db; --d) {
    uint64_t c = rem[d];
    if (c == 0u)
      continue;
    uint64_t q = F.mul(li, c, lead_inv);
    quot[d - db] = q;
    for (int j = 0; j <= db; ++j)
      rem[d - db + j] = F.sub(li, rem[d - db + j], F.mul(li, q, b[j]));
  }
  normalize(quot);
  normalize(rem);
  return {quot, rem};
}

poly mod(const field_ctx &F, size_t li, const poly &a, const poly &b)
{ return divmod(F, li, a, b).second; }

poly gcd(const field_ctx &F, size_t li, poly a, poly b)
{
  normalize(a);
  normalize(b);
  while (!b.empty()) {
    poly r = mod(F, li, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, li, a);
}

poly derivative(const field_ctx &F, size_t li, const poly &f)
{
  if (f.size() < 2)
    return {};
  poly r(f.size() - 1, 0u);
  for (size_t i = 1; i < f.size(); ++i) {
    uint64_t m = i % F.p(); // the prime-subfield element i, code m
    r[i - 1] = m == 0u ? 0u : F.mul(li, f[i], m);
  }
  normalize(r);
  return r;
}

uint64_t eval(const field_ctx &F, size_t li, const poly &f, uint64_t x)
{
  uint64_t acc = 0u;
  for (size_t i = f.size(); i-- > 0;)
    acc = F.add(li, F.mul(li, acc, x), f[i]);
  return acc;
}

poly powmod(const field_ctx &F, size_t li, poly base, uint64_t e, const poly &f)
{
  poly acc{1u};
  base = mod(F, li, base, f);
  while (e) {
    if (e & 1u)
      acc = mod(F, li, mul(F, li, acc, base), f);
    base = mod(F, li, mul(F, li, base, base), f);
    e >>= 1;
  }
  return acc;
}

namespace {

// x^(Q^j) mod f for j = 1..count, Q = layer cardinality
std::vector<poly> frob_powers_mod(const field_ctx &F, size_t li, const poly &f, unsigned count)
{
  uint64_t Q = F.cardinality(li);
  std::vector<poly> out;
  poly cur{0u, 1u};
  normalize(cur);
  for (unsigned j = 0; j < count; ++j) {
    cur = powmod(F, li, cur, Q, f);
    out.push_back(cur);
  }
  return out;
}

} // namespace

bool is_irreducible(const field_ctx &F, size_t li, const poly &f)
{
  int e = deg(f);
  if (e < 1)
    return false;
  if (f.back() != 1u)
    fail(errc::bad_argument, "irreducibility test expects a monic polynomial");
  if (e == 1)
    return true;

  poly x{0u, 1u};

  // x^(Q^e) == x mod f, and gcd(x^(Q^(e/r)) - x, f) = 1 for each prime r | e
  auto powers = frob_powers_mod(F, li, f, static_cast<unsigned>(e));
  if (sub(F, li, powers[e - 1], x) != poly{})
    return false;

  for (uint64_t r : prime_factors_u64(static_cast<uint64_t>(e))) {
    unsigned j = static_cast<unsigned>(e / static_cast<int>(r));
    poly diff = sub(F, li, powers[j - 1], x);
    poly g = gcd(F, li, f, diff);
    if (deg(g) != 0)
      return false;
  }
  return true;
}

bool is_squarefree(const field_ctx &F, size_t li, const poly &f)
{
  if (deg(f) < 1)
    return true;
  poly d = derivative(F, li, f);
  if (d.empty())
    return false; // p-th power
  return deg(gcd(F, li, f, d)) == 0;
}

uint64_t count_distinct_roots(const field_ctx &F, size_t li, const poly &f)
{
  if (deg(f) < 1)
    return 0u;
  poly x{0u, 1u};
  poly xq = powmod(F, li, x, F.cardinality(li), f);
  poly g = gcd(F, li, f, sub(F, li, xq, x));
  return static_cast<uint64_t>(deg(g) < 0 ? 0 : deg(g));
}

std::vector<std::pair<uint32_t, uint32_t>> ddf(const field_ctx &F, size_t li, poly f)
{
  normalize(f);
  if (deg(f) < 1)
    return {};
  f = monic(F, li, f);

  std::vector<std::pair<uint32_t, uint32_t>> out;
  uint64_t Q = F.cardinality(li);
  poly x{0u, 1u};
  poly h = x;
  uint32_t d = 0;
  while (deg(f) > 0) {
    ++d;
    if (2 * d > static_cast<uint32_t>(deg(f))) {
      out.emplace_back(static_cast<uint32_t>(deg(f)), 1u);
      break;
    }
    h = powmod(F, li, h, Q, f);
    poly g = gcd(F, li, f, sub(F, li, h, x));
    if (deg(g) > 0) {
      out.emplace_back(d, static_cast<uint32_t>(deg(g)) / d);
      f = divmod(F, li, f, g).first;
      h = mod(F, li, h, f);
    }
  }
  return out;
}

} // namespace scat::up
