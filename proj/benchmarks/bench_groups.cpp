#include <benchmark/benchmark.h>

#include <scat/ff.hpp>
#include <scat/groups.hpp>
#include <scat/matfq.hpp>

namespace {

scat::matrix_group gl3_f3()
{
  auto F = scat::make_field(3, {1});
  scat::matrix cyc(3, 3);
  cyc.at(0, 2) = 1;
  cyc.at(1, 0) = 1;
  cyc.at(2, 1) = 1;
  scat::matrix trans = scat::mat_identity(3);
  trans.at(0, 1) = 1;
  scat::matrix diag = scat::mat_identity(3);
  diag.at(0, 0) = 2;
  return scat::make_matrix_group(F, 1, {cyc, trans, diag});
}

void bm_stab_chain_gl3(benchmark::State &st)
{
  auto G = gl3_f3();
  for (auto _ : st) {
    scat::stab_chain C(G, 1u << 20);
    benchmark::DoNotOptimize(C.order());
  }
}
BENCHMARK(bm_stab_chain_gl3)->Unit(benchmark::kMillisecond);

void bm_chain_membership(benchmark::State &st)
{
  auto G = gl3_f3();
  scat::stab_chain C(G, 1u << 20);
  scat::matrix g = scat::mat_mul(*G.F, 1, G.gens[0],
                                 scat::mat_mul(*G.F, 1, G.gens[1], G.gens[2]));
  for (auto _ : st) {
    bool in = C.contains(g);
    benchmark::DoNotOptimize(in);
  }
}
BENCHMARK(bm_chain_membership);

void bm_singer_classify(benchmark::State &st)
{
  auto G = scat::singer_gammal1(3, 3);
  for (auto _ : st) {
    auto cls = scat::classify_transitive(G);
    benchmark::DoNotOptimize(cls.verdict);
  }
}
BENCHMARK(bm_singer_classify)->Unit(benchmark::kMillisecond);

void bm_obstructions(benchmark::State &st)
{
  for (auto _ : st) {
    auto reps = scat::proposition_obstructions(3, uint32_t(st.range(0)), 3);
    benchmark::DoNotOptimize(reps.size());
  }
}
BENCHMARK(bm_obstructions)->Arg(1)->Arg(2)->Arg(4);

void bm_zsigmondy(benchmark::State &st)
{
  for (auto _ : st) {
    auto r = scat::zsigmondy(3, uint32_t(st.range(0)));
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_zsigmondy)->Arg(6)->Arg(14)->Arg(30);

} // namespace

BENCHMARK_MAIN();
