#include <benchmark/benchmark.h>

#include <numbers>

#include "apspectra/almost_periodicity.hpp"
#include "apspectra/bohr.hpp"
#include "apspectra/quadrature.hpp"
#include "apspectra/variation.hpp"
#include "apspectra/zeta.hpp"

using namespace apspectra;

namespace {

TrigPolynomial sample(int terms) {
  std::vector<TrigTerm> t;
  for (int k = 0; k < terms; ++k) {
    t.push_back({-4.5 + 9.0 * k / terms + 0.1 * std::numbers::sqrt2, std::polar(1.0 + 0.25 * k, 0.7 * k)});
  }
  return TrigPolynomial(std::move(t));
}

void BM_Integrate(benchmark::State& state) {
  const TrigPolynomial p = sample(static_cast<int>(state.range(0)));
  const double length = 1e5;
  const double width = quadrature::panel_width_limit(p.max_abs_frequency());
  for (auto _ : state) benchmark::DoNotOptimize(quadrature::integrate(p, 0.0, length, width));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(length / width));
}
BENCHMARK(BM_Integrate)->Arg(2)->Arg(8)->Arg(32);

void BM_IntegrateModulus(benchmark::State& state) {
  const TrigPolynomial d = differentiate(sample(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_modulus(d, 0.0, 1e4));
}
BENCHMARK(BM_IntegrateModulus)->Arg(2)->Arg(8);

void BM_BohrCoefficient(benchmark::State& state) {
  const TrigPolynomial p = sample(8);
  const double lambda = p.terms()[3].frequency;
  for (auto _ : state) benchmark::DoNotOptimize(bohr_coefficient(p, lambda).value);
}
BENCHMARK(BM_BohrCoefficient)->Unit(benchmark::kMillisecond);

void BM_ScanSpectrum(benchmark::State& state) {
  const TrigPolynomial p = sample(8);
  ScanOptions s;
  s.range_lo = -5.5;
  s.range_hi = 5.5;
  s.threshold = 0.25;
  for (auto _ : state) benchmark::DoNotOptimize(scan_spectrum(p, s).exponents.size());
}
BENCHMARK(BM_ScanSpectrum)->Unit(benchmark::kMillisecond);

void BM_TranslationNumbers(benchmark::State& state) {
  const TrigPolynomial p({{1.0, 1.0}, {std::numbers::sqrt2, 1.0}});
  TranslationSearch s;
  s.epsilon = 0.2;
  s.tau_hi = 300.0;
  for (auto _ : state) benchmark::DoNotOptimize(find_translation_numbers(p, s).size());
}
BENCHMARK(BM_TranslationNumbers)->Unit(benchmark::kMillisecond);

void BM_ZetaAverageVariation(benchmark::State& state) {
  const ZetaTruncation z(0.5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(average_variation(z).value);
}
BENCHMARK(BM_ZetaAverageVariation)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
