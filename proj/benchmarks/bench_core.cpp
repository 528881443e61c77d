#include <benchmark/benchmark.h>

#include <random>

#include "ergo/catalog.hpp"
#include "ergo/semigroup.hpp"

using namespace ergo;

// Closed form against quadrature for the same rate value.
static void BM_RateClosedForm(benchmark::State& state) {
  const auto g = catalog::frac_power(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(rate(g, 3.0));
}
BENCHMARK(BM_RateClosedForm);

static void BM_RateQuadrature(benchmark::State& state) {
  const auto g = catalog::frac_power(0.25);
  for (auto _ : state) benchmark::DoNotOptimize(rate(g, 3.0, EvalMode::quadrature));
}
BENCHMARK(BM_RateQuadrature);

static void BM_EvaluateOscillatory(benchmark::State& state) {
  const auto mu = RadonMeasure::with_density(density::PowerLaw{0.3, 0.5});
  for (auto _ : state)
    benchmark::DoNotOptimize(exp_integral(mu, cplx(0.01, 5.0), Kernel::one_minus_exp, EvalMode::quadrature));
}
BENCHMARK(BM_EvaluateOscillatory);

static void BM_WienerNorm(benchmark::State& state) {
  const auto g = catalog::log1p();
  for (auto _ : state) benchmark::DoNotOptimize(wiener_norm_cesaro(g, 10.0));
}
BENCHMARK(BM_WienerNorm);

static void BM_PhillipsApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> phase(-1.5, 1.5);
  std::vector<double> phases(n);
  for (double& p : phases) p = phase(rng);
  const auto gen = DiagonalGenerator::log_spaced(1e-3, 1.0, n, phases);
  const Vector x = Vector::Ones(static_cast<Eigen::Index>(n));
  const auto g = catalog::frac_power(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(phillips_apply(gen, g, x));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PhillipsApply)->RangeMultiplier(4)->Range(8, 128)->Complexity(benchmark::oN);

static void BM_RateBoundSweep(benchmark::State& state) {
  const auto gen = DiagonalGenerator::log_spaced(1e-3, 1.0, 50);
  const Vector x = Vector::Ones(50);
  const auto t_grid = log_grid(1e-2, 1e4, 20);
  const auto g = catalog::z_over_z_plus_1();
  for (auto _ : state) benchmark::DoNotOptimize(rate_bound_check(gen, g, x, t_grid));
}
BENCHMARK(BM_RateBoundSweep);
BENCHMARK_MAIN();
