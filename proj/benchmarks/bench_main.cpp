#include <benchmark/benchmark.h>

#include "bz/carleson.hpp"
#include "bz/funcspace.hpp"
#include "bz/geometry.hpp"
#include "bz/operators.hpp"
#include "bz/scale.hpp"
#include "bz/specs.hpp"
#include "bz/weights.hpp"

namespace {

using namespace bz;

void BM_WeightedTail(benchmark::State& state) {
  const auto w = parse_weight("loginvsq shift=1");
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.weighted_tail(r));
    r = r < 0.999 ? r + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_WeightedTail);

void BM_DoublingChecks(benchmark::State& state) {
  const auto w = RadialWeight::power(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_dhat(w, static_cast<int>(state.range(0))));
    benchmark::DoNotOptimize(check_dcheck(w, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_DoublingChecks)->Arg(16)->Arg(128);

void BM_ScaleClassL(benchmark::State& state) {
  const auto psi = ScaleFunction::log_power(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(require_class_l(psi));
}
BENCHMARK(BM_ScaleClassL);

void BM_PseudoDisc(benchmark::State& state) {
  const Complex a(0.3, 0.6);
  const Complex z(0.35, 0.55);
  for (auto _ : state) {
    const auto d = pseudo_disc(a, 0.7);
    benchmark::DoNotOptimize(disc_contains(d, z));
  }
}
BENCHMARK(BM_PseudoDisc);

void BM_Quasinorm(benchmark::State& state) {
  const auto mu = DiscMeasure::area(RadialWeight::power(1.0));
  const auto psi = ScaleFunction::log_power(1.0);
  std::vector<Complex> c(static_cast<std::size_t>(state.range(0)) + 1, Complex(0.5, -0.25));
  const auto f = AnalyticFunction::polynomial(c);
  for (auto _ : state) benchmark::DoNotOptimize(quasinorm(f, mu, psi, 2.0));
}
BENCHMARK(BM_Quasinorm)->Arg(4)->Arg(64);

void BM_CharacteristicSweep(benchmark::State& state) {
  const auto ctx = CarlesonContext::make(RadialWeight::power(0.0), ScaleFunction::constant(1.0),
                                         ScaleFunction::constant(1.0),
                                         DiscMeasure::area(RadialWeight::power(1.0)), 2.0, 2.0);
  SweepOptions opts;
  opts.test_functions = false;
  for (auto _ : state) benchmark::DoNotOptimize(sweep(ctx, static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_CharacteristicSweep)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ApplyTg(benchmark::State& state) {
  std::vector<Complex> c(static_cast<std::size_t>(state.range(0)) + 1, Complex(1.0, 0.0));
  const auto g = AnalyticFunction::polynomial(c);
  const auto f = AnalyticFunction::polynomial(c);
  for (auto _ : state) benchmark::DoNotOptimize(apply_tg(g, f));
}
BENCHMARK(BM_ApplyTg)->Arg(64)->Arg(1024)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
