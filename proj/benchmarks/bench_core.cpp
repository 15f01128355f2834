#include <benchmark/benchmark.h>

#include <scat/ff.hpp>
#include <scat/galois.hpp>
#include <scat/linpoly.hpp>
#include <scat/scatter.hpp>

namespace {

scat::lin_poly sample_poly(uint32_t m)
{
  auto F = scat::make_field(3, {1, 2});
  auto l = scat::make_lin_poly(F, 2, {2, 0, 1});
  return m >= 2 ? scat::extend_for_m(l, m) : l;
}

void bm_field_mul_tables(benchmark::State &st)
{
  auto F = scat::make_field(3, {1, uint32_t(st.range(0))});
  uint64_t card = F->layer(1).cardinality;
  uint64_t a = 1, b = 2;
  for (auto _ : st) {
    a = F->mul(1, a, b);
    b = (b + 1) % card;
    if (b < 2)
      b = 2;
  }
  benchmark::DoNotOptimize(a);
}
BENCHMARK(bm_field_mul_tables)->Arg(4)->Arg(8)->Arg(12);

void bm_field_mul_generic(benchmark::State &st)
{
  auto F = scat::make_field(3, {uint32_t(st.range(0))}, 1);
  uint64_t card = F->layer(1).cardinality;
  uint64_t a = 1, b = 2;
  for (auto _ : st) {
    a = F->mul(1, a, b);
    b = (b + 1) % card;
    if (b < 2)
      b = 2;
  }
  benchmark::DoNotOptimize(a);
}
BENCHMARK(bm_field_mul_generic)->Arg(8)->Arg(16)->Arg(32);

void bm_linear_map_matrix(benchmark::State &st)
{
  auto l = sample_poly(uint32_t(st.range(0)));
  size_t T = scat::target_layer(l, uint32_t(st.range(0)));
  for (auto _ : st) {
    auto M = scat::linear_map_matrix(l, T);
    benchmark::DoNotOptimize(M);
  }
}
BENCHMARK(bm_linear_map_matrix)->Arg(1)->Arg(2)->Arg(3);

void bm_kernel_dim(benchmark::State &st)
{
  auto l = sample_poly(uint32_t(st.range(0)));
  size_t T = scat::target_layer(l, uint32_t(st.range(0)));
  for (auto _ : st) {
    auto k = scat::kernel_dim(l, T);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(bm_kernel_dim)->Arg(1)->Arg(2)->Arg(3);

void bm_is_scattered(benchmark::State &st)
{
  auto l = sample_poly(uint32_t(st.range(0)));
  scat::run_limits lim;
  lim.threads = 1;
  for (auto _ : st) {
    bool sc = scat::is_scattered(l, uint32_t(st.range(0)), 1, lim);
    benchmark::DoNotOptimize(sc);
  }
}
BENCHMARK(bm_is_scattered)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void bm_profile_threads(benchmark::State &st)
{
  auto l = sample_poly(3);
  scat::run_limits lim;
  lim.threads = uint32_t(st.range(0));
  for (auto _ : st) {
    auto pr = scat::root_count_profile(l, 3, 1, lim);
    benchmark::DoNotOptimize(pr);
  }
}
BENCHMARK(bm_profile_threads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_root_count_profile(benchmark::State &st)
{
  auto l = sample_poly(uint32_t(st.range(0)));
  scat::run_limits lim;
  lim.threads = 1;
  for (auto _ : st) {
    auto pr = scat::root_count_profile(l, uint32_t(st.range(0)), 1, lim);
    benchmark::DoNotOptimize(pr);
  }
}
BENCHMARK(bm_root_count_profile)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void bm_newton_ramification(benchmark::State &st)
{
  auto F = scat::make_field(3, {1, 1});
  auto l = scat::make_lin_poly(F, 2, {1, 0, 0, 1});
  for (auto _ : st) {
    auto pr = scat::newton_ramification(l, 1, st.range(0) != 0);
    benchmark::DoNotOptimize(pr);
  }
}
BENCHMARK(bm_newton_ramification)->Arg(0)->Arg(1);

void bm_orbit_census(benchmark::State &st)
{
  auto F = scat::make_field(3, {1, 2});
  auto l = scat::make_lin_poly(F, 2, {2, 0, 1});
  scat::run_limits lim;
  lim.threads = 1;
  for (auto _ : st) {
    auto rep = scat::verify_equivalence(l, 1, uint32_t(st.range(0)), lim);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(bm_orbit_census)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
