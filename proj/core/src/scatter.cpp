#include "scat/scatter.hpp"

#include <atomic>
#include <cstdlib>
#include <map>
#include <thread>

#include "scat/intutil.hpp"

namespace scat {

run_limits default_limits()
{
  run_limits lim;
  if (const char *s = std::getenv("SCATTER_MAX_SPECIALIZATIONS"))
    lim.max_specializations = std::strtoull(s, nullptr, 10);
  if (const char *s = std::getenv("SCATTER_THREADS"))
    lim.threads = static_cast<unsigned>(std::strtoul(s, nullptr, 10));
  return lim;
}

uint32_t scatter_degree(const lin_poly &l, uint32_t t)
{ return std::max(lin_degree(l), t); }

normalize_result t_normalize(const lin_poly &l, uint32_t t)
{
  if (l.is_zero())
    fail(errc::zero_polynomial, "normalizing the zero polynomial");
  if (t < 1)
    fail(errc::bad_argument, "normalization needs t >= 1");

  const field_ctx &F = *l.F;
  uint32_t c = l.layer;
  size_t b = l.base_layer();
  std::vector<uint64_t> cs = l.coeffs;
  nlohmann::json log = nlohmann::json::array();

  // monic
  if (cs.back() != 1u) {
    uint64_t ar = cs.back();
    uint64_t inv = F.inv(c, ar);
    for (auto &x : cs)
      x = F.mul(c, x, inv);
    log.push_back({{"step", "scale"},
                   {"factor", element_to_json(F, c, inv)},
                   {"specialization_bijection",
                    {{"map", "s0 -> a_r * s0"}, {"a_r", element_to_json(F, c, ar)}}}});
  }

  // absorb the x^(q^t) coefficient into the specialization
  if (t < cs.size() && cs[t] != 0u) {
    uint64_t at = cs[t];
    cs[t] = 0u;
    while (!cs.empty() && cs.back() == 0u)
      cs.pop_back();
    log.push_back({{"step", "shift"},
                   {"specialization_bijection",
                    {{"map", "s0 -> s0 + a_t"}, {"a_t", element_to_json(F, c, at)}}}});
    if (cs.empty())
      fail(errc::not_reducible,
           "polynomial is a multiple of x^(q^t); every reduction degenerates");
  }

  uint32_t t_prime = t;

  // frobenius descent to a nonzero linear term
  if (cs[0] == 0u) {
    uint32_t j = 0;
    while (j < cs.size() && cs[j] == 0u)
      ++j;
    if (j > t)
      fail(errc::not_reducible,
           "linear-term reduction would need a negative twist index");
    std::vector<uint64_t> desc(cs.size() - j);
    for (size_t i = 0; i + j < cs.size(); ++i)
      desc[i] = F.frob(c, cs[i + j], b, -static_cast<int64_t>(j));
    cs = std::move(desc);
    t_prime = t - j;
    log.push_back({{"step", "frobenius_descent"},
                   {"j", j},
                   {"specialization_bijection", {{"map", "s0 -> s0^(q^-j)"}, {"j", j}}},
                   {"root_bijection", "x -> x^(q^j)"}});
  }

  return {make_lin_poly(l.F, c, std::move(cs)), t_prime, std::move(log)};
}

size_t target_layer(const lin_poly &l, uint32_t m)
{
  if (m < 1)
    fail(errc::bad_argument, "m must be positive");
  const field_ctx &F = *l.F;
  uint32_t want = F.abs_degree(l.layer) * m;
  // topmost match: degree-1 steps can duplicate absolute degrees below l.layer
  for (size_t li = F.num_layers(); li-- > l.layer;)
    if (F.abs_degree(li) == want)
      return li;
  if (F.abs_degree(l.layer) == want)
    return l.layer;
  fail(errc::layer_mismatch,
       "tower lacks a layer of absolute degree " + std::to_string(want));
}

lin_poly extend_for_m(const lin_poly &l, uint32_t m, uint64_t table_limit)
{
  if (m < 2)
    fail(errc::bad_argument, "extension step needs m >= 2");
  auto G = field_ctx::make_extended(*l.F, l.layer, {m}, table_limit);
  return {G, l.layer, l.coeffs};
}

specialization_ctx make_specialization_ctx(const lin_poly &l, size_t T, uint32_t t)
{
  if (T < l.layer || T >= l.F->num_layers())
    fail(errc::layer_mismatch, "target layer out of range");
  const field_ctx &F = *l.F;
  size_t b = l.base_layer();
  uint32_t N = F.abs_degree(T) / F.abs_degree(b);

  specialization_ctx ctx;
  ctx.l = l;
  ctx.T = T;
  ctx.t = t;
  ctx.N = N;
  ctx.A = linear_map_matrix(l, T);
  ctx.cj.resize(N);
  for (uint32_t j = 0; j < N; ++j)
    ctx.cj[j] = F.frob(T, F.basis_code(T, b, j), b, t);
  return ctx;
}

uint32_t specialization_ctx::kernel_dim_at(uint64_t s0) const
{
  const field_ctx &F = *l.F;
  size_t b = l.base_layer();
  matrix M(N, N);
  for (uint32_t j = 0; j < N; ++j) {
    uint64_t sc = F.mul(T, s0, cj[j]);
    auto cs = F.coords(T, sc, b);
    for (uint32_t i = 0; i < N; ++i)
      M.at(i, j) = static_cast<uint32_t>(F.sub(b, A.at(i, j), cs[i]));
  }
  return N - rref(F, b, M);
}

namespace {

unsigned pick_threads(const run_limits &lim, uint64_t work)
{
  if (work < 4096)
    return 1;
  unsigned t = lim.threads ? lim.threads : std::thread::hardware_concurrency();
  return t ? t : 1;
}

void check_budget(const lin_poly &l, size_t T, const run_limits &lim)
{
  if (l.F->cardinality(T) > lim.max_specializations)
    fail(errc::budget_exceeded,
         "specialization count " + std::to_string(l.F->cardinality(T)) +
             " exceeds the cap " + std::to_string(lim.max_specializations));
}

} // namespace

scatter_profile root_count_profile(const lin_poly &l, uint32_t m, uint32_t t,
                                   const run_limits &lim)
{
  size_t T = target_layer(l, m);
  check_budget(l, T, lim);
  auto ctx = make_specialization_ctx(l, T, t);
  const field_ctx &F = *l.F;
  uint64_t Q = F.cardinality(T);

  unsigned nt = pick_threads(lim, Q);
  std::vector<std::vector<uint64_t>> hists(nt, std::vector<uint64_t>(ctx.N + 1, 0u));
  std::vector<std::thread> pool;
  uint64_t chunk = (Q + nt - 1) / nt;
  for (unsigned w = 0; w < nt; ++w) {
    uint64_t lo = w * chunk, hi = std::min(Q, lo + chunk);
    auto body = [&, lo, hi, w] {
      for (uint64_t s0 = lo; s0 < hi; ++s0)
        ++hists[w][ctx.kernel_dim_at(s0)];
    };
    if (nt == 1)
      body();
    else
      pool.emplace_back(body);
  }
  for (auto &th : pool)
    th.join();

  std::map<uint32_t, uint64_t> merged;
  for (auto const &h : hists)
    for (uint32_t k = 0; k <= ctx.N; ++k)
      if (h[k])
        merged[k] += h[k];

  scatter_profile prof;
  prof.q = l.q();
  prof.n = F.abs_degree(l.layer) / F.abs_degree(l.base_layer());
  prof.m = m;
  prof.t = t;
  for (auto const &[k, cnt] : merged) {
    prof.histogram.emplace_back(k, cnt);
    prof.max_dim = k;
  }
  return prof;
}

bool is_scattered(const lin_poly &l, uint32_t m, uint32_t t, const run_limits &lim)
{
  size_t T = target_layer(l, m);
  check_budget(l, T, lim);
  auto ctx = make_specialization_ctx(l, T, t);
  uint64_t Q = l.F->cardinality(T);

  unsigned nt = pick_threads(lim, Q);
  std::atomic<bool> deep{false};
  std::vector<std::thread> pool;
  uint64_t chunk = (Q + nt - 1) / nt;
  for (unsigned w = 0; w < nt; ++w) {
    uint64_t lo = w * chunk, hi = std::min(Q, lo + chunk);
    auto body = [&, lo, hi] {
      for (uint64_t s0 = lo; s0 < hi; ++s0) {
        if (deep.load(std::memory_order_relaxed))
          return;
        if (ctx.kernel_dim_at(s0) > 1) {
          deep.store(true, std::memory_order_relaxed);
          return;
        }
      }
    };
    if (nt == 1)
      body();
    else
      pool.emplace_back(body);
  }
  for (auto &th : pool)
    th.join();
  return !deep.load();
}

lin_poly index_shift(const lin_poly &l, uint32_t m, uint32_t t, const run_limits &lim)
{
  size_t T = target_layer(l, m);
  const field_ctx &F = *l.F;
  uint32_t nm = F.abs_degree(T) / F.abs_degree(l.base_layer());
  if (t > nm)
    fail(errc::index_out_of_range,
         "t = " + std::to_string(t) + " exceeds nm = " + std::to_string(nm));
  if (!is_scattered(l, m, t, lim))
    fail(errc::not_scattered, "index shift requires a scattered input");

  std::vector<uint64_t> shift(nm - t + 1, 0u);
  shift.back() = 1u;
  return compose(l, make_lin_poly(l.F, l.layer, std::move(shift)));
}

uint64_t scatter_profile::specializations() const
{
  uint64_t s = 0;
  for (auto const &[k, cnt] : histogram)
    s += cnt;
  return s;
}

nlohmann::json scatter_profile::to_json() const
{
  nlohmann::json j;
  j["q"] = q;
  j["n"] = n;
  j["m"] = m;
  j["t"] = t;
  nlohmann::json h = nlohmann::json::array();
  for (auto const &[k, cnt] : histogram)
    h.push_back({{"kernel_dim", k}, {"count", cnt}});
  j["histogram"] = h;
  j["max_dim"] = max_dim;
  j["specializations"] = specializations();
  j["scattered"] = max_dim <= 1;
  return j;
}

nlohmann::json scan_report::to_json() const
{
  nlohmann::json j;
  j["q"] = q;
  j["n"] = n;
  j["t"] = t;
  j["m_max"] = m_max;
  nlohmann::json es = nlohmann::json::array();
  for (auto const &[m, sc] : entries)
    es.push_back({{"m", m}, {"scattered", sc}});
  j["entries"] = es;
  j["note"] = "evidence, not proof: a finite scan cannot certify exceptionality";
  return j;
}

scan_report exceptional_scan(const lin_poly &l, uint32_t t, uint32_t m_max,
                             const run_limits &lim)
{
  const field_ctx &F = *l.F;
  scan_report rep;
  rep.q = l.q();
  rep.n = F.abs_degree(l.layer) / F.abs_degree(l.base_layer());
  rep.t = t;
  rep.m_max = m_max;

  uint32_t abs_c = F.abs_degree(l.layer);
  for (uint32_t m = 1; m <= m_max; ++m) {
    uint64_t card;
    if (!checked_pow_u64(F.p(), abs_c * m, card) || card > lim.max_specializations)
      fail(errc::budget_exceeded,
           "q^(nm) passes the cap at m = " + std::to_string(m));
    lin_poly lm = l;
    if (m >= 2)
      lm = extend_for_m(l, m);
    rep.entries.emplace_back(m, is_scattered(lm, m, t, lim));
  }
  return rep;
}

} // namespace scat
