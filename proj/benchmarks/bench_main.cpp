#include <benchmark/benchmark.h>

#include "ainf/bar.hpp"
#include "ainf/random.hpp"

using namespace ainf;

namespace {

const Ring* QQ() { return Ring::rationals(); }

void BM_StasheffCheck(benchmark::State& st) {
  Rng rng(1);
  AlgebraPtr a = random_valid_algebra(rng, QQ());
  for (auto _ : st) benchmark::DoNotOptimize(check_alg_relations(*a).pass);
}
BENCHMARK(BM_StasheffCheck);

void BM_BarCheck(benchmark::State& st) {
  Rng rng(1);
  AlgebraPtr a = random_valid_algebra(rng, QQ());
  for (auto _ : st) benchmark::DoNotOptimize(bar_check(*a).pass);
}
BENCHMARK(BM_BarCheck);

void BM_TransferFixD(benchmark::State& st) {
  AlgebraPtr d = fix_d(QQ());
  for (auto _ : st) benchmark::DoNotOptimize(minimal_model(d).minimal);
}
BENCHMARK(BM_TransferFixD);

void BM_HochschildGroup(benchmark::State& st) {
  PairFixture h = heisenberg_module(QQ());
  HochschildSetting S = HochschildSetting::of(*h.algebra, truncate_to_M2(*h.module));
  int p = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(hh_group(S, p, 1 - p).dim);
}
BENCHMARK(BM_HochschildGroup)->DenseRange(1, 3);

void BM_ProveHeisenberg(benchmark::State& st) {
  PairFixture h = heisenberg_module(QQ());
  for (auto _ : st) benchmark::DoNotOptimize(prove_module_formality(h.algebra, h.module).stage);
}
BENCHMARK(BM_ProveHeisenberg);

void BM_ProveFormalFixture(benchmark::State& st) {
  PairFixture f = formal_fixtures(QQ(), 1, 9).front();
  for (auto _ : st) benchmark::DoNotOptimize(prove_module_formality(f.algebra, f.module).verdict);
}
BENCHMARK(BM_ProveFormalFixture);

void BM_SmithForm(benchmark::State& st) {
  Rng rng(5);
  const Ring* P = Ring::poly(QQ());
  size_t n = static_cast<size_t>(st.range(0));
  Matrix a = random_poly_matrix(rng, P, n, n, 4);
  for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form(a).rank);
}
BENCHMARK(BM_SmithForm)->DenseRange(2, 5);

void BM_GaugeTrivialization(benchmark::State& st) {
  Rng rng(7);
  AlgebraPtr a = upper_triangular(QQ());
  GaugeDeformation g = random_gauge_deformation(rng, a, 4);
  for (auto _ : st) benchmark::DoNotOptimize(trivialize_truncated_deformation(*a, g.m_h).trivial);
}
BENCHMARK(BM_GaugeTrivialization);

}  // namespace

BENCHMARK_MAIN();
