#include "scat/matfq.hpp"

#include <algorithm>

namespace scat {

matrix::matrix(std::initializer_list<std::initializer_list<uint64_t>> init)
{
  rows = static_cast<uint32_t>(init.size());
  cols = rows ? static_cast<uint32_t>(init.begin()->size()) : 0;
  a.reserve(size_t(rows) * cols);
  for (auto const &row : init) {
    if (row.size() != cols)
      fail(errc::bad_argument, "ragged matrix initializer");
    for (uint64_t v : row)
      a.push_back(static_cast<uint32_t>(v));
  }
}

matrix mat_identity(uint32_t n)
{
  matrix I(n, n);
  for (uint32_t i = 0; i < n; ++i)
    I.at(i, i) = 1u;
  return I;
}

bool mat_is_identity(const matrix &A)
{
  if (A.rows != A.cols)
    return false;
  for (uint32_t i = 0; i < A.rows; ++i)
    for (uint32_t j = 0; j < A.cols; ++j)
      if (A.at(i, j) != (i == j ? 1u : 0u))
        return false;
  return true;
}

static void check_same_shape(const matrix &A, const matrix &B)
{
  if (A.rows != B.rows || A.cols != B.cols)
    fail(errc::bad_argument, "matrix shape mismatch");
}

matrix mat_add(const field_ctx &F, size_t li, const matrix &A, const matrix &B)
{
  check_same_shape(A, B);
  matrix C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i)
    C.a[i] = static_cast<uint32_t>(F.add(li, A.a[i], B.a[i]));
  return C;
}

matrix mat_sub(const field_ctx &F, size_t li, const matrix &A, const matrix &B)
{
  check_same_shape(A, B);
  matrix C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i)
    C.a[i] = static_cast<uint32_t>(F.sub(li, A.a[i], B.a[i]));
  return C;
}

matrix mat_mul(const field_ctx &F, size_t li, const matrix &A, const matrix &B)
{
  if (A.cols != B.rows)
    fail(errc::bad_argument, "matrix shape mismatch");
  matrix C(A.rows, B.cols);
  for (uint32_t i = 0; i < A.rows; ++i) {
    for (uint32_t k = 0; k < A.cols; ++k) {
      uint32_t aik = A.at(i, k);
      if (aik == 0u)
        continue;
      for (uint32_t j = 0; j < B.cols; ++j) {
        uint32_t bkj = B.at(k, j);
        if (bkj == 0u)
          continue;
        C.at(i, j) = static_cast<uint32_t>(F.add(li, C.at(i, j), F.mul(li, aik, bkj)));
      }
    }
  }
  return C;
}

matrix mat_scale(const field_ctx &F, size_t li, const matrix &A, uint64_t c)
{
  matrix C(A.rows, A.cols);
  for (size_t i = 0; i < A.a.size(); ++i)
    C.a[i] = static_cast<uint32_t>(F.mul(li, A.a[i], c));
  return C;
}

matrix mat_pow(const field_ctx &F, size_t li, matrix A, uint64_t e)
{
  if (A.rows != A.cols)
    fail(errc::bad_argument, "power of a non-square matrix");
  matrix R = mat_identity(A.rows);
  while (e) {
    if (e & 1u)
      R = mat_mul(F, li, R, A);
    A = mat_mul(F, li, A, A);
    e >>= 1;
  }
  return R;
}

matrix mat_transpose(const matrix &A)
{
  matrix T(A.cols, A.rows);
  for (uint32_t i = 0; i < A.rows; ++i)
    for (uint32_t j = 0; j < A.cols; ++j)
      T.at(j, i) = A.at(i, j);
  return T;
}

uint64_t mat_order(const field_ctx &F, size_t li, const matrix &A, uint64_t max_order)
{
  matrix P = A;
  for (uint64_t k = 1; k <= max_order; ++k) {
    if (mat_is_identity(P))
      return k;
    P = mat_mul(F, li, P, A);
  }
  return 0;
}

uint32_t rref(const field_ctx &F, size_t li, matrix &A, std::vector<uint32_t> *pivots)
{
  uint32_t r = 0;
  for (uint32_t c = 0; c < A.cols && r < A.rows; ++c) {
    uint32_t pr = r;
    while (pr < A.rows && A.at(pr, c) == 0u)
      ++pr;
    if (pr == A.rows)
      continue;
    if (pr != r)
      for (uint32_t j = 0; j < A.cols; ++j)
        std::swap(A.at(pr, j), A.at(r, j));

    uint64_t piv_inv = F.inv(li, A.at(r, c));
    for (uint32_t j = c; j < A.cols; ++j)
      A.at(r, j) = static_cast<uint32_t>(F.mul(li, A.at(r, j), piv_inv));

    for (uint32_t i = 0; i < A.rows; ++i) {
      if (i == r)
        continue;
      uint32_t m = A.at(i, c);
      if (m == 0u)
        continue;
      for (uint32_t j = c; j < A.cols; ++j)
        A.at(i, j) = static_cast<uint32_t>(
            F.sub(li, A.at(i, j), F.mul(li, m, A.at(r, j))));
    }
    if (pivots)
      pivots->push_back(c);
    ++r;
  }
  return r;
}

uint32_t mat_rank(const field_ctx &F, size_t li, matrix A)
{ return rref(F, li, A); }

uint64_t mat_det(const field_ctx &F, size_t li, matrix A)
{
  if (A.rows != A.cols)
    fail(errc::bad_argument, "determinant of a non-square matrix");
  uint32_t n = A.rows;
  uint64_t det = 1u;
  for (uint32_t c = 0; c < n; ++c) {
    uint32_t pr = c;
    while (pr < n && A.at(pr, c) == 0u)
      ++pr;
    if (pr == n)
      return 0u;
    if (pr != c) {
      for (uint32_t j = 0; j < n; ++j)
        std::swap(A.at(pr, j), A.at(c, j));
      det = F.neg(li, det);
    }
    uint64_t piv = A.at(c, c);
    det = F.mul(li, det, piv);
    uint64_t piv_inv = F.inv(li, piv);
    for (uint32_t i = c + 1; i < n; ++i) {
      uint64_t m = F.mul(li, A.at(i, c), piv_inv);
      if (m == 0u)
        continue;
      for (uint32_t j = c; j < n; ++j)
        A.at(i, j) = static_cast<uint32_t>(
            F.sub(li, A.at(i, j), F.mul(li, m, A.at(c, j))));
    }
  }
  return det;
}

matrix mat_inverse(const field_ctx &F, size_t li, const matrix &A)
{
  if (A.rows != A.cols)
    fail(errc::singular_matrix, "inverse of a non-square matrix");
  uint32_t n = A.rows;
  matrix aug(n, 2 * n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint32_t j = 0; j < n; ++j)
      aug.at(i, j) = A.at(i, j);
    aug.at(i, n + i) = 1u;
  }
  if (rref(F, li, aug) < n || aug.at(n - 1, n - 1) != 1u)
    fail(errc::singular_matrix, "matrix is singular");
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      if (aug.at(i, j) != (i == j ? 1u : 0u))
        fail(errc::singular_matrix, "matrix is singular");
  matrix inv(n, n);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::vector<std::vector<uint32_t>> kernel_basis(const field_ctx &F, size_t li, matrix A)
{
  std::vector<uint32_t> pivots;
  uint32_t rank = rref(F, li, A, &pivots);

  std::vector<bool> is_pivot(A.cols, false);
  for (uint32_t c : pivots)
    is_pivot[c] = true;

  std::vector<std::vector<uint32_t>> basis;
  for (uint32_t fc = 0; fc < A.cols; ++fc) {
    if (is_pivot[fc])
      continue;
    std::vector<uint32_t> v(A.cols, 0u);
    v[fc] = 1u;
    for (uint32_t r = 0; r < rank; ++r)
      v[pivots[r]] = static_cast<uint32_t>(F.neg(li, A.at(r, fc)));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<uint32_t> mat_apply(const field_ctx &F, size_t li, const matrix &A,
                                const std::vector<uint32_t> &v)
{
  if (v.size() != A.cols)
    fail(errc::bad_argument, "vector length mismatch");
  std::vector<uint32_t> out(A.rows, 0u);
  for (uint32_t j = 0; j < A.cols; ++j) {
    if (v[j] == 0u)
      continue;
    for (uint32_t i = 0; i < A.rows; ++i) {
      uint32_t aij = A.at(i, j);
      if (aij)
        out[i] = static_cast<uint32_t>(F.add(li, out[i], F.mul(li, aij, v[j])));
    }
  }
  return out;
}

std::vector<uint32_t> point_to_vec(uint64_t q, uint32_t n, uint64_t point)
{
  std::vector<uint32_t> v(n);
  for (uint32_t i = 0; i < n; ++i) {
    v[i] = static_cast<uint32_t>(point % q);
    point /= q;
  }
  return v;
}

uint64_t vec_to_point(uint64_t q, const std::vector<uint32_t> &v)
{
  uint64_t p = 0u, m = 1u;
  for (uint32_t x : v) {
    p += x * m;
    m *= q;
  }
  return p;
}

uint64_t mat_apply_point(const field_ctx &F, size_t li, const matrix &A, uint64_t point)
{
  uint64_t q = F.cardinality(li);
  return vec_to_point(q, mat_apply(F, li, A, point_to_vec(q, A.cols, point)));
}

up::poly min_poly(const field_ctx &F, size_t li, const matrix &A)
{
  if (A.rows != A.cols)
    fail(errc::bad_argument, "minimal polynomial of a non-square matrix");
  uint32_t n = A.rows;
  if (n == 0)
    return {1u};

  up::poly mp{1u};
  for (uint32_t s = 0; s < n && up::deg(mp) < static_cast<int>(n); ++s) {
    // relation polynomial of e_s under A via reduced Krylov rows
    std::vector<std::vector<uint32_t>> rows;       // reduced vectors
    std::vector<int> lead;                          // leading index per row
    std::vector<up::poly> combo;                    // row as combination of A^j e_s
    std::vector<uint32_t> v(n, 0u);
    v[s] = 1u;
    up::poly rel;
    for (uint32_t j = 0; j <= n; ++j) {
      std::vector<uint32_t> w = v;
      up::poly cw(j + 1, 0u);
      cw[j] = 1u;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (lead[r] < 0)
          continue;
        uint32_t c = w[lead[r]];
        if (c == 0u)
          continue;
        for (uint32_t i = 0; i < n; ++i)
          w[i] = static_cast<uint32_t>(F.sub(li, w[i], F.mul(li, c, rows[r][i])));
        cw = up::sub(F, li, cw, up::scale(F, li, combo[r], c));
      }
      int l = -1;
      for (uint32_t i = 0; i < n; ++i)
        if (w[i]) {
          l = static_cast<int>(i);
          break;
        }
      if (l < 0) {
        rel = up::monic(F, li, cw);
        break;
      }
      uint64_t inv = F.inv(li, w[l]);
      for (uint32_t i = 0; i < n; ++i)
        w[i] = static_cast<uint32_t>(F.mul(li, w[i], inv));
      cw = up::scale(F, li, cw, inv);
      rows.push_back(std::move(w));
      lead.push_back(l);
      combo.push_back(std::move(cw));
      v = mat_apply(F, li, A, v);
    }
    if (rel.empty())
      fail(errc::bad_argument, "krylov relation search failed");
    // mp = lcm(mp, rel)
    auto g = up::gcd(F, li, mp, rel);
    auto [quot, rem] = up::divmod(F, li, rel, g);
    (void)rem;
    mp = up::mul(F, li, mp, quot);
  }
  return up::monic(F, li, mp);
}

up::poly char_poly(const field_ctx &F, size_t li, const matrix &A)
{
  if (A.rows != A.cols)
    fail(errc::bad_argument, "characteristic polynomial of a non-square matrix");
  uint32_t n = A.rows;
  matrix H = A;

  // reduce to upper Hessenberg by similarity
  for (uint32_t c = 0; c + 2 <= n; ++c) {
    uint32_t pr = c + 1;
    while (pr < n && H.at(pr, c) == 0u)
      ++pr;
    if (pr == n)
      continue;
    if (pr != c + 1) {
      for (uint32_t j = 0; j < n; ++j)
        std::swap(H.at(pr, j), H.at(c + 1, j));
      for (uint32_t i = 0; i < n; ++i)
        std::swap(H.at(i, pr), H.at(i, c + 1));
    }
    uint64_t inv = F.inv(li, H.at(c + 1, c));
    for (uint32_t i = c + 2; i < n; ++i) {
      uint64_t m = F.mul(li, H.at(i, c), inv);
      if (m == 0u)
        continue;
      for (uint32_t j = 0; j < n; ++j)
        H.at(i, j) = static_cast<uint32_t>(F.sub(li, H.at(i, j), F.mul(li, m, H.at(c + 1, j))));
      for (uint32_t j = 0; j < n; ++j)
        H.at(j, c + 1) = static_cast<uint32_t>(F.add(li, H.at(j, c + 1), F.mul(li, m, H.at(j, i))));
    }
  }

  // p_k = char poly of leading k x k block
  std::vector<up::poly> p(n + 1);
  p[0] = {1u};
  for (uint32_t k = 1; k <= n; ++k) {
    up::poly x_minus{F.neg(li, H.at(k - 1, k - 1)), 1u};
    p[k] = up::mul(F, li, x_minus, p[k - 1]);
    uint64_t prod = 1u;
    for (uint32_t m = 1; m < k; ++m) {
      prod = F.mul(li, prod, H.at(k - m, k - m - 1));
      uint64_t coef = F.mul(li, H.at(k - m - 1, k - 1), prod);
      if (coef == 0u)
        continue;
      p[k] = up::sub(F, li, p[k], up::scale(F, li, p[k - m - 1], coef));
    }
  }
  return p[n];
}

matrix companion_matrix(const field_ctx &F, size_t li, const up::poly &f)
{
  int d = up::deg(f);
  if (d < 1 || f.back() != 1u)
    fail(errc::bad_argument, "companion matrix expects a monic polynomial of degree >= 1");
  uint32_t n = static_cast<uint32_t>(d);
  matrix C(n, n);
  for (uint32_t i = 0; i + 1 < n; ++i)
    C.at(i + 1, i) = 1u;
  for (uint32_t i = 0; i < n; ++i)
    C.at(i, n - 1) = static_cast<uint32_t>(F.neg(li, f[i]));
  return C;
}

} // namespace scat
