#include "scat/intutil.hpp"

#include <algorithm>
#include <numeric>

#include "scat/errors.hpp"

namespace scat {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m)
{
  return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m)
{
  if (m == 1u)
    return 0u;

  uint64_t r = 1u;
  b %= m;
  while (e) {
    if (e & 1u)
      r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(uint64_t n)
{
  if (n < 2u)
    return false;
  for (uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0u)
      return n == p;
  }

  uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0u) {
    d >>= 1;
    ++s;
  }

  // deterministic Miller-Rabin bases for 64-bit inputs
  for (uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1u || x == n - 1)
      continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness)
      return false;
  }
  return true;
}

namespace {

uint64_t pollard_rho(uint64_t n)
{
  if ((n & 1u) == 0u)
    return 2u;

  for (uint64_t c = 1u;; ++c) {
    auto step = [n, c](uint64_t x) { return (mulmod_u64(x, x, n) + c) % n; };
    uint64_t x = 2u, y = 2u, d = 1u;
    while (d == 1u) {
      x = step(x);
      y = step(step(y));
      uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n)
      return d;
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t> &out)
{
  if (n == 1u)
    return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<uint64_t, unsigned>> factorization_u64(uint64_t n)
{
  std::vector<uint64_t> fs;
  for (uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u}) {
    while (n % p == 0u) {
      fs.push_back(p);
      n /= p;
    }
  }
  factor_rec(n, fs);
  std::sort(fs.begin(), fs.end());

  std::vector<std::pair<uint64_t, unsigned>> out;
  for (uint64_t p : fs) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1u);
  }
  return out;
}

std::vector<uint64_t> prime_factors_u64(uint64_t n)
{
  std::vector<uint64_t> out;
  for (auto const &[p, e] : factorization_u64(n))
    out.push_back(p);
  return out;
}

bool checked_pow_u64(uint64_t base, uint32_t exp, uint64_t &out)
{
  constexpr uint64_t limit = uint64_t{1} << 63;
  __uint128_t acc = 1;
  for (uint32_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit)
      return false;
  }
  out = static_cast<uint64_t>(acc);
  return true;
}

prime_power split_prime_power(uint64_t q)
{
  if (q < 2u)
    fail(errc::not_prime_power, "q = " + std::to_string(q));

  for (uint64_t p = 2u; p * p <= q; ++p) {
    if (q % p == 0u) {
      uint32_t a = 0;
      uint64_t m = q;
      while (m % p == 0u) {
        m /= p;
        ++a;
      }
      if (m != 1u)
        fail(errc::not_prime_power, std::to_string(q) + " has several prime divisors");
      return {p, a};
    }
  }
  return {q, 1u}; // q prime
}

} // namespace scat
