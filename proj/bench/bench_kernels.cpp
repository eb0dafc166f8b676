#include <benchmark/benchmark.h>

#include <random>

#include "fournls/diagnostics.hpp"
#include "fournls/dynamics.hpp"
#include "fournls/reference.hpp"
#include "fournls/resonance.hpp"
#include "fournls/trilinear.hpp"

using namespace fournls;

namespace {

FourierState noise(int n_max) {
  std::mt19937_64 gen(n_max);
  std::normal_distribution<double> g;
  FourierState u(n_max);
  for (auto& c : u.coeffs()) c = {g(gen), g(gen)};
  return u;
}

void BM_ScanSerial(benchmark::State& state) {
  const int box = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::scan_resonance_box_serial(box));
  state.SetItemsProcessed(state.iterations() * std::int64_t(2 * box + 1) * (2 * box + 1) * (2 * box + 1));
}

void BM_ScanParallel(benchmark::State& state) {
  const int box = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_resonance_box(box));
  state.SetItemsProcessed(state.iterations() * std::int64_t(2 * box + 1) * (2 * box + 1) * (2 * box + 1));
}

void BM_ConvolutionDirect(benchmark::State& state) {
  const auto u = noise(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::cubic_convolution(u, u, u));
}

void BM_ConvolutionFFT(benchmark::State& state) {
  const auto u = noise(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cubic_convolution(u, u, u));
}

void BM_TrilinearOutput(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto a = random_dyadic_field(level, 1, 1), b = random_dyadic_field(level, 1, 2),
             c = random_dyadic_field(level, 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(nonresonant_output_norm(a, b, c, level));
}

void BM_Rk4Step(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  auto u = noise(n_max);
  IntegratorSpec spec;
  spec.dt = 1e-6;
  Stepper stepper(n_max, spec, EquationKind::full());
  for (auto _ : state) {
    stepper.advance(u, spec.dt);
    benchmark::DoNotOptimize(u);
  }
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(16)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(16)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolutionDirect)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_ConvolutionFFT)->Arg(8)->Arg(16)->Arg(32)->Arg(256);
BENCHMARK(BM_TrilinearOutput)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rk4Step)->Arg(16)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
