#include <benchmark/benchmark.h>

#include <cmath>

#include "nhchain/analytic.hpp"
#include "nhchain/eig.hpp"
#include "nhchain/model.hpp"
#include "nhchain/observables.hpp"

namespace {

using namespace nhchain;

ModelSpec iatxy_spec(int n, double lambda1) {
  ModelSpec spec;
  spec.kind = ModelKind::IATXY;
  spec.n_sites = n;
  spec.gamma = 0.5;
  spec.lambda1 = lambda1;
  spec.lambda2 = 0.5;
  return spec;
}

void BM_build_hamiltonian(benchmark::State& state) {
  const ModelSpec spec = iatxy_spec(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) {
    DenseOperator h = build_hamiltonian(spec);
    benchmark::DoNotOptimize(h.entries.data());
  }
}
BENCHMARK(BM_build_hamiltonian)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_diagonalize_dense(benchmark::State& state) {
  const DenseOperator h =
      build_hamiltonian(iatxy_spec(static_cast<int>(state.range(0)), 1.0));
  for (auto _ : state) {
    SpectrumReport report = diagonalize(h);
    benchmark::DoNotOptimize(report.max_abs_imag);
  }
}
BENCHMARK(BM_diagonalize_dense)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_spectrum_momentum_sectors(benchmark::State& state) {
  const ModelSpec spec = iatxy_spec(static_cast<int>(state.range(0)), 1.0);
  for (auto _ : state) {
    SpectrumReport report = spectrum_of(spec);
    benchmark::DoNotOptimize(report.max_abs_imag);
  }
}
BENCHMARK(BM_spectrum_momentum_sectors)
    ->Arg(6)
    ->Arg(8)
    ->Arg(10)
    ->Arg(12)
    ->Unit(benchmark::kMillisecond);

void BM_detect_onset(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ModelSpec tmpl = iatxy_spec(n, 0.0);
  const double predicted = reality_threshold(ModelKind::IATXY, 0.5, 0.5).value;
  const OnsetWindow window = default_onset_window(predicted);
  for (auto _ : state) {
    SweepRecord record = detect_onset(tmpl, SweepParam::Lambda1, window.start,
                                      window.stop, 0.05, 1e-7);
    benchmark::DoNotOptimize(record.detected);
  }
}
BENCHMARK(BM_detect_onset)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_thermal_state(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double surface = std::sqrt(1.0 + 0.25 + 0.25);
  const DenseOperator h = build_hamiltonian(iatxy_spec(n, surface + 1e-3));
  for (auto _ : state) {
    ThermalState ts = thermal_state(h, 200.0);
    benchmark::DoNotOptimize(ts.rho.data());
  }
}
BENCHMARK(BM_thermal_state)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_partial_trace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double surface = std::sqrt(1.0 + 0.25 + 0.25);
  const ThermalState ts =
      thermal_state(build_hamiltonian(iatxy_spec(n, surface + 1e-3)), 200.0);
  for (auto _ : state) {
    TwoSiteState pair = partial_trace_two_site(ts.rho, n, 1, 2);
    benchmark::DoNotOptimize(pair.rho12.data());
  }
}
BENCHMARK(BM_partial_trace)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
