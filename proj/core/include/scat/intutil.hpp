#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace scat {

bool is_prime_u64(uint64_t n);

// distinct prime factors, ascending
std::vector<uint64_t> prime_factors_u64(uint64_t n);

// full factorization (prime, exponent), ascending by prime
std::vector<std::pair<uint64_t, unsigned>> factorization_u64(uint64_t n);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t m);

// out = base^exp, false on overflow past 2^63
bool checked_pow_u64(uint64_t base, uint32_t exp, uint64_t &out);

struct prime_power {
  uint64_t p;
  uint32_t a;
};

// q = p^a or throws not_prime_power
prime_power split_prime_power(uint64_t q);

} // namespace scat
