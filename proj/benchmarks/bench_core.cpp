#include <benchmark/benchmark.h>

#include "ofdmcr/capmoments.hpp"
#include "ofdmcr/collision.hpp"
#include "ofdmcr/extremes.hpp"
#include "ofdmcr/mcsim.hpp"
#include "ofdmcr/moschopoulos.hpp"
#include "ofdmcr/scheduler.hpp"
#include "ofdmcr/specfun.hpp"

using namespace ofdmcr;

namespace {

SystemConfig fig4_system() {
  SystemConfig cfg;
  cfg.pool = {128, {30}};
  cfg.Fs = 20;
  cfg.Pm = 100.0;
  cfg.Pn = {10.0};
  return cfg;
}

void BM_RegularizedGammaP(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::regularized_gamma_p(7.5, x));
    x = x < 50 ? x * 1.01 : 0.1;
  }
}
BENCHMARK(BM_RegularizedGammaP);

void BM_InverseGammaP(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(specfun::inverse_regularized_gamma_p(25.0, 0.975));
}
BENCHMARK(BM_InverseGammaP);

void BM_MomentsInterference(benchmark::State& state) {
  const auto rule = specfun::gcq_rule(static_cast<int>(state.range(0)));
  const LinkParams lp{100, 10, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(capmoments::moments_interference(lp, rule));
}
BENCHMARK(BM_MomentsInterference)->Arg(20)->Arg(50)->Arg(200);

void BM_SeriesBuild(benchmark::State& state) {
  const std::vector<GammaParams> comps{{1.5, 1.0}, {2.0, 1.2}, {1.0, 1.5}, {2.5, 1.1}};
  const int h = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moschopoulos::build_series(comps, h));
}
BENCHMARK(BM_SeriesBuild)->Arg(25)->Arg(100)->Arg(400);

void BM_SeriesCdf(benchmark::State& state) {
  const auto s = moschopoulos::build_series({{1.5, 1.0}, {2.0, 1.2}, {1.0, 1.5}, {2.5, 1.1}}, 25);
  double y = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(moschopoulos::series_cdf(s, y));
    y = y < 30 ? y + 0.37 : 0.5;
  }
}
BENCHMARK(BM_SeriesCdf);

void BM_MarginalLaw(benchmark::State& state) {
  const auto cfg = fig4_system();
  capmoments::MomentCache cache;
  const auto fits = moschopoulos::fit_capacity(cfg, cache);
  for (auto _ : state) benchmark::DoNotOptimize(moschopoulos::marginal_capacity_law(cfg, fits));
}
BENCHMARK(BM_MarginalLaw)->Unit(benchmark::kMillisecond);

void BM_MvHypergeomSample(benchmark::State& state) {
  const SubcarrierPool pool{128, {30, 20, 10}};
  Rng rng({1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(collision::mvhypergeom_sample(20, pool, rng));
}
BENCHMARK(BM_MvHypergeomSample);

void BM_SampleCapacity(benchmark::State& state) {
  const auto cfg = fig4_system();
  Rng rng({2, 0});
  for (auto _ : state) benchmark::DoNotOptimize(mcsim::sample_capacity(cfg, rng));
}
BENCHMARK(BM_SampleCapacity);

void BM_Opportunistic(benchmark::State& state) {
  SystemConfig cfg;
  cfg.pool = {100, {40}};
  cfg.Fs = 10;
  cfg.Pm = 100.0;
  cfg.Pn = {10.0};
  const int M = static_cast<int>(state.range(0));
  std::uint64_t run = 0;
  for (auto _ : state) benchmark::DoNotOptimize(scheduler::run_opportunistic(cfg, M, 5, {{3, 0}, run++}));
}
BENCHMARK(BM_Opportunistic)->Arg(10)->Arg(40)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
