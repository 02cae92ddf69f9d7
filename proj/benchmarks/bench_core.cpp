#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "certirelu/fitting.hpp"
#include "certirelu/fourier.hpp"
#include "certirelu/network.hpp"
#include "certirelu/sampling.hpp"
#include "certirelu/targets.hpp"

using namespace certirelu;

namespace {

ShallowReluNetwork random_network(int n, int m) {
  Rng rng = derive_stream(1, static_cast<std::uint64_t>(m));
  const auto samples = sample_pairs(SamplingDensity::uniform(n, 1.0), m, rng);
  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(m, -1.0, 1.0);
  return {Eigen::VectorXd::Ones(n), 0.5, samples, c};
}

void BM_Eval(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto net = random_network(2, m);
  const Eigen::Vector2d x(0.3, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(net.eval(x));
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_Eval)->RangeMultiplier(8)->Range(8, 4096);

void BM_EvalGrad(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto net = random_network(2, m);
  const Eigen::Vector2d x(0.3, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(net.eval_grad(x));
}
BENCHMARK(BM_EvalGrad)->RangeMultiplier(8)->Range(8, 4096);

void BM_DesignMatrix(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng = derive_stream(2, static_cast<std::uint64_t>(m));
  const auto samples = sample_pairs(SamplingDensity::uniform(1, 1.0), m, rng);
  const auto grid = ball_grid(1, 1.0, 2001);
  for (auto _ : state) benchmark::DoNotOptimize(design_matrix(samples, grid));
}
BENCHMARK(BM_DesignMatrix)->RangeMultiplier(4)->Range(16, 4096)->Unit(benchmark::kMillisecond);

void BM_FitVmod(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto sampled = sample_model(paper_vmod_target().model, ball_grid(1, 1.0, 2001));
  Rng rng = derive_stream(3, static_cast<std::uint64_t>(m));
  FitProblem p;
  p.samples = sample_pairs(SamplingDensity::uniform(1, 1.0), m, rng);
  p.points = sampled.points;
  p.targets = sampled.values;
  p.ridge = 1e-10;
  for (auto _ : state) benchmark::DoNotOptimize(fit_least_squares(p).objective);
}
BENCHMARK(BM_FitVmod)->RangeMultiplier(4)->Range(16, 4096)->Unit(benchmark::kMillisecond);

void BM_ForwardFt(benchmark::State& state) {
  const auto omega = symmetric_grid(static_cast<double>(state.range(0)), 0.01);
  auto f = [](double x) { return std::exp(-std::numbers::pi * x * x); };
  for (auto _ : state) benchmark::DoNotOptimize(forward_ft(f, {-2.5, 2.5}, omega, 1.0 / 500));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(omega.size()));
}
BENCHMARK(BM_ForwardFt)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_MultiplierValue(benchmark::State& state) {
  const Multiplier r;
  double x = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(r.value(x));
    x = x > 2.0 ? -2.0 : x + 0.001;
  }
}
BENCHMARK(BM_MultiplierValue);

}  // namespace

BENCHMARK_MAIN();
