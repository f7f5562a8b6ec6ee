#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pathlab/convolution.hpp"
#include "pathlab/propagator.hpp"
#include "pathlab/stationary_delta.hpp"
#include "pathlab/tridiagonal.hpp"

namespace {

using namespace pathlab;

// ============================================================================
// numerics-core
// ============================================================================

static void BM_DampedQuadrature(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  DampedOscillatoryIntegrand f;
  f.phase = [eps](double x) { return (x - 0.4) * (x - 0.4) / eps; };
  f.phase_slope = [eps](double x) { return 2.0 * (x - 0.4) / eps; };
  f.amplitude = [](double) { return ComplexAmplitude(1.0); };
  f.eta = 0.0625;
  const auto window = truncation_window(0.4, 0.4, std::sqrt(2.0 * std::numbers::pi * eps / 2.0), f.eta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(damped_quadrature(f, window, std::size_t{1} << 24));
  }
}
BENCHMARK(BM_DampedQuadrature)->Arg(10)->Arg(100)->Arg(1000);

static void BM_ToeplitzApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<ComplexAmplitude> kernel(2 * n - 1), input(n);
  for (std::size_t k = 0; k < kernel.size(); ++k) kernel[k] = std::polar(1.0, 0.01 * static_cast<double>(k * k));
  for (std::size_t k = 0; k < n; ++k) input[k] = std::exp(-1e-4 * static_cast<double>(k));
  const ToeplitzConvolver conv(kernel, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(conv.apply(input));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ToeplitzApply)->RangeMultiplier(4)->Range(256, 1 << 16)->Complexity(benchmark::oNLogN);

static void BM_LeadingMinors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> diag(n, 1.99), off(n - 1, -1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(leading_minors(diag, off));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LeadingMinors)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity(benchmark::oN);

// ============================================================================
// stationary-delta
// ============================================================================

static void BM_DeltaPairing(benchmark::State& state) {
  const auto f = ScalarObjective::polynomial({1.0, -2.0, 1.0});
  const auto o = Observable::gaussian(0.5);
  const RegularizationParams reg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_pairing(f, o, 0.01, reg));
  }
}
BENCHMARK(BM_DeltaPairing)->Unit(benchmark::kMillisecond);

// ============================================================================
// propagator-lab
// ============================================================================

static void BM_LatticeKernelExact(benchmark::State& state) {
  const KernelSpec spec{LagrangianSpec::harmonic(1.0, 1.0), 1.0, Normalization::Exact};
  const LatticeConfig cfg{0.2, 0.8, 0.0, 1.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice_kernel_exact(spec, cfg));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LatticeKernelExact)->RangeMultiplier(4)->Range(4, 4096)->Complexity(benchmark::oN);

static void BM_LatticeKernelDamped(benchmark::State& state) {
  const KernelSpec spec{LagrangianSpec::quartic(1.0, 1.0, 0.1), 1.0, Normalization::Exact};
  const LatticeConfig cfg{0.2, 0.8, 0.0, 1.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice_kernel_damped(spec, cfg, 0.125, std::size_t{1} << 24));
  }
}
BENCHMARK(BM_LatticeKernelDamped)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
