#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dimspect/covers.hpp"
#include "dimspect/estimate.hpp"
#include "dimspect/kernels.hpp"

namespace {

using namespace dimspect;

AtomicMeasure random_measure(int dim, std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Atom> atoms(count);
  for (auto& a : atoms) {
    for (int k = 0; k < dim; ++k) a.x[k] = u(rng);
    a.mass = 1.0 / static_cast<double>(count);
  }
  return AtomicMeasure(dim, std::move(atoms));
}

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void BM_BallMasses(benchmark::State& state) {
  const auto mu = random_measure(2, 4000);
  std::vector<Point> centers;
  std::vector<double> radii;
  for (std::size_t i = 0; i < 2000; ++i) {
    centers.push_back(mu.atoms()[i].x);
    radii.push_back(0.01 + 1e-5 * static_cast<double>(i));
  }
  for (auto _ : state) benchmark::DoNotOptimize(ball_masses(mu, centers, radii, exec_of(state)));
}
BENCHMARK(BM_BallMasses)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MaxBallRatio2D(benchmark::State& state) {
  const auto mu = random_measure(2, 1500);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_ball_ratio(mu, 0.5, 1e-3, 0.1, exec_of(state)));
  }
}
BENCHMARK(BM_MaxBallRatio2D)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DyadicCost(benchmark::State& state) {
  const auto pts = sequence_points(1.0, 40000);
  const DyadicTree tree(pts, ScaleRange(1e-3, Theta(0.5)), DyadicAnchor::top_scale);
  for (auto _ : state) benchmark::DoNotOptimize(tree.cost(0.3, exec_of(state)));
}
BENCHMARK(BM_DyadicCost)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EstimateSpectrum(benchmark::State& state) {
  const auto pts = sequence_points(1.0, 40000);
  const std::vector<Theta> grid{Theta(0.25), Theta(0.5), Theta(0.75), Theta(1.0)};
  const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  EstimateOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_spectrum(pts, grid, deltas, opts));
}
BENCHMARK(BM_EstimateSpectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
