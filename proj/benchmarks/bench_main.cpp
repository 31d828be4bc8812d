#include <benchmark/benchmark.h>

#include "klr/catalog.hpp"
#include "klr/duality.hpp"
#include "klr/rmatrix.hpp"
#include "klr/submodule.hpp"

using namespace klr;

namespace {

ModulePtr share(GradedModule m) { return std::make_shared<GradedModule>(std::move(m)); }

// L(1)^{o n} in A_3.
void BM_ConvolveLetters(benchmark::State& state) {
  AlgebraPtr alg = ambient_A(3);
  std::vector<ModulePtr> factors(state.range(0), share(simple_module(alg, 0)));
  for (auto _ : state) benchmark::DoNotOptimize(convolve_all(factors).dim());
}
BENCHMARK(BM_ConvolveLetters)->DenseRange(2, 5);

void BM_CheckRelations(benchmark::State& state) {
  AlgebraPtr alg = ambient_B(3);
  GradedModule m = convolve(module_B2(alg), simple_module(alg, 2));
  for (auto _ : state) benchmark::DoNotOptimize(check_relations(m).ok());
}
BENCHMARK(BM_CheckRelations);

void BM_RMatrixK(benchmark::State& state) {
  AlgebraPtr alg = ambient_A(3);
  ModulePtr k = share(build_K(alg, 0, 2));
  ModulePtr l = share(affinization_L12(alg));
  for (auto _ : state) benchmark::DoNotOptimize(rmatrix_pair(k, l).hom.is_zero());
}
BENCHMARK(BM_RMatrixK)->Unit(benchmark::kMillisecond);

void BM_SimplicityTest(benchmark::State& state) {
  AlgebraPtr alg = ambient_A(3);
  std::vector<ModulePtr> f{share(simple_module(alg, 0)), share(simple_module(alg, 1)), share(simple_module(alg, 0)),
                           share(simple_module(alg, 1))};
  GradedModule m = convolve_all(f);
  for (auto _ : state) benchmark::DoNotOptimize(composition_factors(m).size());
}
BENCHMARK(BM_SimplicityTest)->Unit(benchmark::kMillisecond);

void BM_DerivedCartan(benchmark::State& state) {
  DualityDatum d = duality_datum("D", 4);
  for (auto _ : state) benchmark::DoNotOptimize(derive_cartan(d).cartan.size());
}
BENCHMARK(BM_DerivedCartan)->Unit(benchmark::kMillisecond);

// F on the simples of height <= 2 for the Ex. D datum.
void BM_FunctorD(benchmark::State& state) {
  DeltaBimodule delta(duality_datum("D", 4));
  auto simples = simple_modules_up_to_height(delta.algebra(), 2);
  for (auto _ : state)
    for (const auto& s : simples) benchmark::DoNotOptimize(apply_functor(delta, s).module().dim());
}
BENCHMARK(BM_FunctorD)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
