// Micro-benchmarks for the hot paths: the member-set metric (dominates the
// metrics stage), kernel-walk sampling, simplex descent, and CCA epochs.

#include <benchmark/benchmark.h>

#include <vector>

#include "povatlas/arm.hpp"
#include "povatlas/cca.hpp"
#include "povatlas/config.hpp"
#include "povatlas/metric.hpp"
#include "povatlas/pov.hpp"
#include "povatlas/rng.hpp"
#include "povatlas/simplex.hpp"

using namespace povatlas;

namespace {

Motor random_motor(Rng& rng) {
  Motor m;
  for (int k = 0; k < 4; ++k) m[k] = rng.uniform(-M_PI, M_PI);
  return m;
}

PointOfView synthetic_pov(Rng& rng, int members) {
  PointOfView p;
  for (int i = 0; i < members; ++i) p.members.push_back(random_motor(rng));
  p.seed = p.members[0];
  p.pose_tag = forward_pose(p.seed);
  return p;
}

void bm_motor_distance(benchmark::State& state) {
  Rng rng(1);
  Motor a = random_motor(rng), b = random_motor(rng);
  for (auto _ : state) benchmark::DoNotOptimize(motor_distance(a, b));
}
BENCHMARK(bm_motor_distance);

void bm_jacobian_kernel(benchmark::State& state) {
  Rng rng(2);
  Motor m = random_motor(rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_direction(m));
}
BENCHMARK(bm_jacobian_kernel);

void bm_hausdorff(benchmark::State& state) {
  Rng rng(3);
  PointOfView a = synthetic_pov(rng, 100), b = synthetic_pov(rng, 100);
  for (auto _ : state) benchmark::DoNotOptimize(hausdorff_distance(a, b));
}
BENCHMARK(bm_hausdorff);

void bm_pairwise_distances(benchmark::State& state) {
  Rng rng(4);
  SpatialAtlas atlas;
  for (int i = 0; i < 40; ++i) atlas.povs.push_back(synthetic_pov(rng, 100));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(atlas, 1));
}
BENCHMARK(bm_pairwise_distances)->Unit(benchmark::kMillisecond);

void bm_sample_pov(benchmark::State& state) {
  PovParams params;
  Motor m0{0.1, -1.5, 2.2, -3.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_pov(m0, params));
}
BENCHMARK(bm_sample_pov)->Unit(benchmark::kMillisecond);

void bm_simplex_rosenbrock(benchmark::State& state) {
  auto rosenbrock = [](const Eigen::Vector4d& x) {
    double f = 0.0;
    for (int i = 0; i < 3; ++i) {
      double a = x[i + 1] - x[i] * x[i], b = 1.0 - x[i];
      f += 100.0 * a * a + b * b;
    }
    return f;
  };
  Eigen::Vector4d x0(-1.2, 1.0, -1.2, 1.0);
  SimplexOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_simplex(rosenbrock, x0, opts));
}
BENCHMARK(bm_simplex_rosenbrock)->Unit(benchmark::kMillisecond);

void bm_cca_fit(benchmark::State& state) {
  Rng rng(5);
  const int n = 100;
  Eigen::MatrixXd X(n, 2);
  for (int i = 0; i < n; ++i) X.row(i) << rng.uniform(), rng.uniform();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) D(i, j) = D(j, i) = (X.row(i) - X.row(j)).norm();
  CcaParams params;
  for (auto _ : state) benchmark::DoNotOptimize(cca_fit(D, 2, params));
}
BENCHMARK(bm_cca_fit)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
