#pragma once

// Dense univariate polynomials with coefficients in one tower layer.
// A polynomial is a little-endian vector of codes; empty vector = 0.

#include <cstdint>
#include <utility>
#include <vector>

#include "scat/ff.hpp"

namespace scat::up {

using poly = std::vector<uint64_t>;

int deg(const poly &f);
void normalize(poly &f);

poly add(const field_ctx &F, size_t li, const poly &a, const poly &b);
poly sub(const field_ctx &F, size_t li, const poly &a, const poly &b);
poly mul(const field_ctx &F, size_t li, const poly &a, const poly &b);
poly scale(const field_ctx &F, size_t li, const poly &a, uint64_t c);
poly monic(const field_ctx &F, size_t li, const poly &a);

// b must be nonzero
std::pair<poly, poly> divmod(const field_ctx &F, size_t li, const poly &a, const poly &b);
poly mod(const field_ctx &F, size_t li, const poly &a, const poly &b);

poly gcd(const field_ctx &F, size_t li, poly a, poly b); // monic unless zero

poly derivative(const field_ctx &F, size_t li, const poly &f);

uint64_t eval(const field_ctx &F, size_t li, const poly &f, uint64_t x);

poly powmod(const field_ctx &F, size_t li, poly base, uint64_t e, const poly &f);

bool is_irreducible(const field_ctx &F, size_t li, const poly &f); // f monic, deg >= 1

bool is_squarefree(const field_ctx &F, size_t li, const poly &f);

// number of distinct roots in the coefficient field: deg gcd(x^Q - x mod f, f)
uint64_t count_distinct_roots(const field_ctx &F, size_t li, const poly &f);

// distinct-degree factorization of a monic squarefree f:
// list of (factor degree, number of factors of that degree), ascending degree
std::vector<std::pair<uint32_t, uint32_t>> ddf(const field_ctx &F, size_t li, poly f);

} // namespace scat::up
