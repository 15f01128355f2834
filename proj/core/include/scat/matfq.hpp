#pragma once

// dense matrices over a tower layer, entries stored as element codes

#include <cstdint>
#include <vector>

#include "scat/ff.hpp"
#include "scat/upoly.hpp"

namespace scat {

struct matrix {
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<uint32_t> a; // row major

  matrix() = default;
  matrix(uint32_t r, uint32_t c) : rows(r), cols(c), a(size_t(r) * c, 0u) {}
  matrix(std::initializer_list<std::initializer_list<uint64_t>> init);

  uint32_t &at(uint32_t r, uint32_t c) { return a[size_t(r) * cols + c]; }
  uint32_t at(uint32_t r, uint32_t c) const { return a[size_t(r) * cols + c]; }

  bool operator==(const matrix &o) const = default;
};

matrix mat_identity(uint32_t n);
bool mat_is_identity(const matrix &A);
matrix mat_add(const field_ctx &F, size_t li, const matrix &A, const matrix &B);
matrix mat_sub(const field_ctx &F, size_t li, const matrix &A, const matrix &B);
matrix mat_mul(const field_ctx &F, size_t li, const matrix &A, const matrix &B);
matrix mat_scale(const field_ctx &F, size_t li, const matrix &A, uint64_t c);
matrix mat_pow(const field_ctx &F, size_t li, matrix A, uint64_t e);
matrix mat_transpose(const matrix &A);

// least k in [1, max_order] with A^k = I, or 0 if none
uint64_t mat_order(const field_ctx &F, size_t li, const matrix &A, uint64_t max_order);

// in-place reduced row echelon form; returns rank, records pivot columns
uint32_t rref(const field_ctx &F, size_t li, matrix &A,
              std::vector<uint32_t> *pivots = nullptr);
uint32_t mat_rank(const field_ctx &F, size_t li, matrix A);
uint64_t mat_det(const field_ctx &F, size_t li, matrix A);
matrix mat_inverse(const field_ctx &F, size_t li, const matrix &A); // Singular on failure

// basis of {v : A v = 0}, each vector of length cols
std::vector<std::vector<uint32_t>> kernel_basis(const field_ctx &F, size_t li, matrix A);

std::vector<uint32_t> mat_apply(const field_ctx &F, size_t li, const matrix &A,
                                const std::vector<uint32_t> &v);

// vectors in F_q^n packed as little-endian base-q integers
std::vector<uint32_t> point_to_vec(uint64_t q, uint32_t n, uint64_t point);
uint64_t vec_to_point(uint64_t q, const std::vector<uint32_t> &v);
uint64_t mat_apply_point(const field_ctx &F, size_t li, const matrix &A, uint64_t point);

// minimal polynomial, monic, via Krylov relations
up::poly min_poly(const field_ctx &F, size_t li, const matrix &A);

up::poly char_poly(const field_ctx &F, size_t li, const matrix &A);

matrix companion_matrix(const field_ctx &F, size_t li, const up::poly &f); // f monic

} // namespace scat
