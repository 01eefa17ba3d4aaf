#include <gnlab/battery.hpp>
#include <gnlab/calculus.hpp>
#include <gnlab/inequalities.hpp>
#include <gnlab/mems.hpp>
#include <gnlab/quadrature.hpp>
#include <gnlab/seminorm.hpp>
#include <gnlab/weights.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace gnlab;

static void BM_integrate_smooth(benchmark::State& state) {
  for (auto _ : state) {
    auto r = integrate_1d([](double s) { return std::sin(30 * s) * std::exp(s); }, 0.0, 1.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_integrate_smooth);

static void BM_integrate_singular(benchmark::State& state) {
  for (auto _ : state) {
    auto r = integrate_1d([](double s) { return 1.0 / std::sqrt(s); }, 0.0, 1.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_integrate_singular);

static void BM_seminorm_hess(benchmark::State& state) {
  const auto u = profiles::cosine_bump(static_cast<int>(state.range(0)), 0.5);
  const auto h = WeightSpec::power_law(-0.5, 0.0, 1.0);
  for (auto _ : state) {
    auto r = weighted_seminorm(u, Integrand::hess_T_h, 3.0, h);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_seminorm_hess)->Arg(2)->Arg(6);

static void BM_check_main2(benchmark::State& state) {
  const auto u = profiles::paraboloid(3, 0.5);
  const auto h = WeightSpec::shifted_power(-2.0, -1.0);
  for (auto _ : state) {
    auto r = check_main2(u, h, 2.5);
    benchmark::DoNotOptimize(r.ratio);
  }
}
BENCHMARK(BM_check_main2);

static void BM_ledger(benchmark::State& state) {
  const auto h = WeightSpec::power_law_scaled(2.0);
  for (auto _ : state) {
    auto l = build_ledger(h, 2.1, 6);
    benchmark::DoNotOptimize(l.c_hcp);
  }
}
BENCHMARK(BM_ledger);

static void BM_solve_mems(benchmark::State& state) {
  MemsConfig cfg;
  cfg.grid_size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto sol = solve_mems(cfg);
    benchmark::DoNotOptimize(sol.max_u);
  }
}
BENCHMARK(BM_solve_mems)->Arg(128)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
