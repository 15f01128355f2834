#include "scat/galois.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "scat/intutil.hpp"

namespace scat {

namespace {

unsigned pick_threads(const run_limits &lim, uint64_t work)
{
  if (work < 4096)
    return 1;
  unsigned t = lim.threads ? lim.threads : std::thread::hardware_concurrency();
  return t ? t : 1;
}

uint64_t checked_q_pow(uint64_t q, uint32_t e, const char *what)
{
  uint64_t out = 0;
  if (!checked_pow_u64(q, e, out))
    fail(errc::budget_exceeded, std::string(what) + " needs q^" + std::to_string(e) +
                                    ", which exceeds the supported range");
  return out;
}

nlohmann::json mat_json(const matrix &A)
{
  auto rows = nlohmann::json::array();
  for (uint32_t r = 0; r < A.rows; ++r) {
    auto row = nlohmann::json::array();
    for (uint32_t c = 0; c < A.cols; ++c)
      row.push_back(A.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void require_square_invertible(const field_ctx &F, size_t li, const matrix &M)
{
  if (M.rows != M.cols || M.rows == 0)
    fail(errc::bad_argument, "matrix must be square and nonempty");
  if (mat_rank(F, li, M) != M.rows)
    fail(errc::singular_matrix, "matrix is not invertible");
}

} // namespace

void require_t_normalized(const lin_poly &l, uint32_t t)
{
  if (t < 1)
    fail(errc::not_normalized, "shift index t must be at least 1");
  if (l.is_zero() || l.coeffs.back() != 1)
    fail(errc::not_normalized, "polynomial is not monic");
  if (t < l.coeffs.size() && l.coeffs[t] != 0)
    fail(errc::not_normalized, "x^(q^t) coefficient is nonzero");
  if (l.coeffs[0] == 0)
    fail(errc::not_normalized, "linear term vanishes");
}

up::poly specialized_poly(const lin_poly &l, size_t T, uint32_t t, uint64_t s0)
{
  const field_ctx &F = *l.F;
  if (T < l.layer || T >= F.num_layers())
    fail(errc::layer_mismatch, "target layer out of range");
  if (s0 >= F.cardinality(T))
    fail(errc::bad_argument, "s0 code out of range for the target layer");

  uint32_t r = lin_degree(l);
  uint32_t d = std::max(r, t);
  uint64_t q = l.q();
  uint64_t qd = checked_q_pow(q, d, "specialized polynomial");
  if (qd > (uint64_t{1} << 24))
    fail(errc::budget_exceeded, "specialized polynomial degree q^d - 1 is too large");

  // coefficient a_i sits at exponent q^i - 1; codes carry up the tower verbatim
  up::poly P(qd, 0);
  uint64_t qi = 1;
  for (uint32_t i = 0; i < l.coeffs.size(); ++i) {
    if (l.coeffs[i])
      P[qi - 1] = l.coeffs[i];
    qi *= q;
  }
  uint64_t qt = checked_q_pow(q, t, "specialized polynomial");
  P[qt - 1] = F.sub(T, P[qt - 1], s0);
  up::normalize(P);
  return P;
}

nlohmann::json orbit_type::to_json() const
{
  nlohmann::json j;
  j["s0"] = s0;
  j["degrees"] = degrees;
  j["ramified"] = ramified;
  j["degenerate"] = degenerate;
  return j;
}

orbit_type orbit_type_at(const lin_poly &l, uint32_t t, uint32_t m, uint64_t s0)
{
  require_t_normalized(l, t);
  const field_ctx &F = *l.F;
  size_t T = target_layer(l, m);

  orbit_type ot;
  ot.s0 = s0;

  up::poly P = specialized_poly(l, T, t, s0);
  uint32_t d = std::max(lin_degree(l), t);
  uint64_t generic_deg = checked_q_pow(l.q(), d, "orbit type") - 1;

  if (up::deg(P) <= 0) {
    ot.degenerate = true;
    ot.ramified = generic_deg > 0;
    return ot;
  }

  ot.ramified = uint64_t(up::deg(P)) < generic_deg;
  up::poly f = up::monic(F, T, P);
  if (!up::is_squarefree(F, T, f)) {
    // cannot happen for a t-normalized l (x l/x - s0 x^(q^t) has unit
    // derivative), but guard the factor count anyway
    ot.ramified = true;
    f = up::divmod(F, T, f, up::gcd(F, T, f, up::derivative(F, T, f))).first;
    f = up::monic(F, T, f);
  }
  for (auto [dg, cnt] : up::ddf(F, T, f))
    for (uint32_t k = 0; k < cnt; ++k)
      ot.degrees.push_back(dg);
  return ot;
}

bool rank_condition(const field_ctx &F, size_t li, const matrix &M)
{
  require_square_invertible(F, li, M);
  matrix D = mat_sub(F, li, M, mat_identity(M.rows));
  return mat_rank(F, li, D) + 1 >= M.rows;
}

uint64_t fixed_points_nonzero(const field_ctx &F, size_t li, const matrix &M)
{
  require_square_invertible(F, li, M);
  matrix D = mat_sub(F, li, M, mat_identity(M.rows));
  uint32_t k = M.rows - mat_rank(F, li, D);
  return checked_q_pow(F.cardinality(li), k, "fixed point count") - 1;
}

nlohmann::json equivalence_report::to_json() const
{
  nlohmann::json j;
  j["q"] = q;
  j["n"] = n;
  j["m"] = m;
  j["t"] = t;
  j["d"] = d;
  j["places"] = places;
  j["inconsistent"] = inconsistent;
  j["dropped"] = dropped;
  j["all_consistent"] = all_consistent;
  j["global_fixed_point_bound"] = global_bound_holds;
  j["is_scattered"] = scattered;
  j["equivalence_holds"] = agree;
  if (!detail.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto &p : detail) {
      nlohmann::json e;
      e["s0"] = p.s0;
      e["kernel_dim"] = p.kernel_dim;
      e["fixed_roots"] = p.fixed_roots;
      e["dropped"] = p.dropped;
      e["consistent"] = p.consistent;
      arr.push_back(std::move(e));
    }
    j["places_detail"] = std::move(arr);
  }
  return j;
}

equivalence_report verify_equivalence(const lin_poly &l, uint32_t t, uint32_t m,
                                      const run_limits &lim, uint64_t detail_cap)
{
  require_t_normalized(l, t);
  const field_ctx &F = *l.F;
  size_t T = target_layer(l, m);
  uint64_t Q = F.cardinality(T);
  if (Q > lim.max_specializations)
    fail(errc::budget_exceeded, "place count " + std::to_string(Q) +
                                    " exceeds the specialization budget");

  equivalence_report rep;
  rep.q = l.q();
  rep.n = F.abs_degree(l.layer) / F.abs_degree(l.layer - 1);
  rep.m = m;
  rep.t = t;
  rep.d = scatter_degree(l, t);
  rep.places = Q;
  uint64_t generic_deg = checked_q_pow(rep.q, rep.d, "equivalence report") - 1;

  auto ctx = make_specialization_ctx(l, T, t);
  bool want_detail = Q <= detail_cap;
  if (want_detail)
    rep.detail.resize(Q);

  struct partial {
    uint64_t inconsistent = 0, dropped = 0;
    bool bound = true;
    bool scattered = true;
  };
  unsigned nt = pick_threads(lim, Q * 16); // factoring work dominates
  std::vector<partial> parts(nt);
  std::vector<std::thread> pool;
  uint64_t chunk = (Q + nt - 1) / nt;

  auto work = [&](unsigned w) {
    partial &pp = parts[w];
    uint64_t lo = w * chunk, hi = std::min(Q, lo + chunk);
    for (uint64_t s0 = lo; s0 < hi; ++s0) {
      uint32_t k = ctx.kernel_dim_at(s0);
      up::poly P = specialized_poly(l, T, t, s0);
      uint64_t n1 = up::deg(P) <= 0 ? 0 : up::count_distinct_roots(F, T, P);
      bool drop = uint64_t(std::max(up::deg(P), 0)) < generic_deg;
      uint64_t qk = 1;
      for (uint32_t i = 0; i < k; ++i)
        qk *= rep.q;
      bool ok = (n1 == qk - 1) && ((n1 <= rep.q - 1) == (k <= 1));
      if (!ok)
        ++pp.inconsistent;
      if (drop)
        ++pp.dropped;
      if (n1 > rep.q - 1)
        pp.bound = false;
      if (k > 1)
        pp.scattered = false;
      if (want_detail)
        rep.detail[s0] = {s0, k, n1, drop, ok};
    }
  };
  if (nt == 1) {
    work(0);
  } else {
    for (unsigned w = 0; w < nt; ++w)
      pool.emplace_back(work, w);
    for (auto &th : pool)
      th.join();
  }
  bool kernel_scattered = true;
  for (const auto &pp : parts) {
    rep.inconsistent += pp.inconsistent;
    rep.dropped += pp.dropped;
    rep.global_bound_holds = rep.global_bound_holds && pp.bound;
    kernel_scattered = kernel_scattered && pp.scattered;
  }
  rep.all_consistent = rep.inconsistent == 0;
  rep.scattered = is_scattered(l, m, t, lim);
  // the kernel side of the loop must match the library verdict exactly
  if (rep.scattered != kernel_scattered)
    fail(errc::bad_argument, "internal disagreement between kernel scans");
  rep.agree = rep.global_bound_holds == rep.scattered;
  return rep;
}

nlohmann::json ramification_profile::to_json() const
{
  nlohmann::json j;
  j["place"] = place;
  j["total_degree"] = total_degree;
  j["q_divisible"] = q_divisible;
  auto arr = nlohmann::json::array();
  for (const auto &e : entries) {
    nlohmann::json je;
    je["slope"] = {e.slope_num, e.slope_den};
    je["width"] = e.width;
    je["e"] = e.e;
    je["multiplicity"] = e.multiplicity;
    je["wild"] = e.wild;
    arr.push_back(std::move(je));
  }
  j["entries"] = std::move(arr);
  return j;
}

ramification_profile newton_ramification(const lin_poly &l, uint32_t t, bool at_infinity)
{
  if (!l.is_zero() && lin_degree(l) == t)
    fail(errc::equal_degrees, "degree index equals the shift index; the family degenerates");
  require_t_normalized(l, t);

  uint32_t r = lin_degree(l);
  uint32_t d = std::max(r, t);
  uint64_t q = l.q();
  uint64_t p = l.F->p();
  checked_q_pow(q, d, "newton polygon");

  // valuation points of l/x - s x^(q^t - 1): coefficients a_i contribute
  // (q^i - 1, 0), the s term contributes (q^t - 1, v(s)) at the chosen place
  std::vector<std::pair<int64_t, int64_t>> pts;
  uint64_t qi = 1;
  for (uint32_t i = 0; i < l.coeffs.size(); ++i) {
    if (l.coeffs[i])
      pts.push_back({int64_t(qi - 1), 0});
    qi *= q;
  }
  uint64_t qt = 1;
  for (uint32_t i = 0; i < t; ++i)
    qt *= q;
  pts.push_back({int64_t(qt - 1), at_infinity ? -1 : 1});
  std::sort(pts.begin(), pts.end());

  std::vector<std::pair<int64_t, int64_t>> hull;
  for (const auto &pt : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // keep strictly convex turns: drop the middle point when it lies on
      // or above the segment to pt
      __int128 cross = __int128(x2 - x1) * (pt.second - y1) -
                       __int128(y2 - y1) * (pt.first - x1);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }

  ramification_profile prof;
  prof.place = at_infinity ? "s=inf" : "s=0";
  for (size_t i = 1; i < hull.size(); ++i) {
    uint64_t dx = uint64_t(hull[i].first - hull[i - 1].first);
    int64_t dy = hull[i].second - hull[i - 1].second;
    ram_entry e;
    e.width = dx;
    if (dy == 0) {
      e.slope_num = 0;
      e.slope_den = 1;
      e.e = 1;
      e.multiplicity = dx;
    } else {
      uint64_t g = std::gcd(dx, uint64_t(dy < 0 ? -dy : dy));
      e.slope_num = dy / int64_t(g);
      e.slope_den = dx / g;
      // tame reading of the polygon: index = slope denominator; segments
      // with p | e need finer data than the polygon carries, so flag them
      e.e = e.slope_den;
      e.multiplicity = g;
      e.wild = e.slope_den % p == 0;
    }
    prof.q_divisible = prof.q_divisible || e.e % p == 0;
    prof.total_degree += e.e * e.multiplicity;
    prof.entries.push_back(e);
  }
  return prof;
}

nlohmann::json kummer_report::to_json() const
{
  nlohmann::json j;
  j["q"] = q;
  j["n"] = n;
  j["m"] = m;
  j["t"] = t;
  j["geometric_order"] = geom_order;
  j["arithmetic_order"] = arith_order;
  j["constant_field_degree"] = const_field_degree;
  j["frobenius_power"] = frobenius_power;
  j["singer_generator"] = mat_json(singer);
  j["frobenius_generator"] = mat_json(frobenius_mat);
  j["scattered"] = scattered;
  j["groups_differ"] = groups_differ;
  j["corollary_holds"] = cor_holds;
  j["iff_reliable"] = iff_reliable;
  return j;
}

kummer_report kummer_monodromy(uint64_t q, uint32_t n, uint32_t m, uint32_t t,
                               const run_limits &lim)
{
  if (n < 1 || m < 1 || t < 1)
    fail(errc::bad_argument, "n, m, t must all be at least 1");
  prime_power pp = split_prime_power(q);

  kummer_report rep;
  rep.q = q;
  rep.n = n;
  rep.m = m;
  rep.t = t;
  rep.geom_order = checked_q_pow(q, t, "kummer monodromy") - 1;
  uint64_t nm = uint64_t(n) * m;
  uint64_t g = std::gcd(uint64_t(t), nm);
  rep.const_field_degree = uint32_t(t / g);
  if (rep.geom_order > UINT64_MAX / rep.const_field_degree)
    fail(errc::budget_exceeded, "arithmetic monodromy order overflows");
  rep.arith_order = rep.geom_order * rep.const_field_degree;
  rep.frobenius_power = uint32_t(nm % t);
  rep.groups_differ = rep.const_field_degree > 1;

  // generator matrices act on F_{q^t} as an F_q-space
  if (rep.geom_order + 1 > (uint64_t{1} << 24))
    fail(errc::budget_exceeded, "generator matrices need q^t within table range");
  rep.F = make_field(pp.p, {pp.a, t});
  const field_ctx &F = *rep.F;
  uint64_t gen = F.layer(2).has_tables ? F.layer(2).generator : 0;
  if (!gen)
    for (uint64_t c = 1; c < F.cardinality(2); ++c)
      if (F.mult_order(2, c) == rep.geom_order) {
        gen = c;
        break;
      }
  rep.singer = matrix(t, t);
  rep.frobenius_mat = matrix(t, t);
  for (uint32_t j = 0; j < t; ++j) {
    uint64_t bj = F.basis_code(2, 1, j);
    auto sc = F.coords(2, F.mul(2, gen, bj), 1);
    auto fc = F.coords(2, F.frob(2, bj, 1, 1), 1);
    for (uint32_t i = 0; i < t; ++i) {
      rep.singer.at(i, j) = uint32_t(sc[i]);
      rep.frobenius_mat.at(i, j) = uint32_t(fc[i]);
    }
  }

  // scatteredness of x at this level, on a fresh tower F_q < F_{q^n} < F_{q^nm}
  std::vector<uint32_t> degrees{pp.a, n};
  if (m >= 2)
    degrees.push_back(m);
  auto Fx = make_field(pp.p, degrees);
  lin_poly x = make_lin_poly(Fx, 2, {1});
  rep.scattered = is_scattered(x, m, t, lim);
  rep.cor_holds = rep.scattered == rep.groups_differ;
  rep.iff_reliable = t >= 2 && is_prime_u64(t);
  return rep;
}

} // namespace scat
