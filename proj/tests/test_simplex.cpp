#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "povatlas/simplex.hpp"

using namespace povatlas;

namespace {

// classic narrow-valley benchmark with a known minimum at (1, 1, 1, 1)
double rosenbrock(const Eigen::Vector4d& x) {
  double f = 0.0;
  for (int i = 0; i < 3; ++i)
    f += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
  return f;
}

}  // namespace

TEST_CASE("quadratic bowl converges to the center") {
  Eigen::Vector4d target(0.3, -0.7, 1.2, 0.0);
  auto f = [&](const Eigen::Vector4d& x) { return (x - target).squaredNorm(); };
  SimplexResult r = minimize_simplex(f, Eigen::Vector4d::Zero());
  CHECK(r.converged);
  CHECK((r.x - target).norm() < 1e-5);
  CHECK(r.f < 1e-10);
  CHECK(r.evals > 0);
}

TEST_CASE("rosenbrock valley is solved with restarts") {
  SimplexOptions opts;
  opts.max_iters = 5000;
  SimplexResult r = minimize_simplex(rosenbrock, Eigen::Vector4d(-1.2, 1.0, -1.2, 1.0), opts);
  CHECK(r.f < 1e-8);
  CHECK((r.x - Eigen::Vector4d::Ones()).norm() < 1e-3);
}

TEST_CASE("the reported value matches the reported point") {
  auto f = [](const Eigen::Vector4d& x) { return std::cos(x[0]) + x.squaredNorm(); };
  SimplexResult r = minimize_simplex(f, Eigen::Vector4d(1, 1, 1, 1));
  CHECK(r.f == doctest::Approx(f(r.x)));
}

TEST_CASE("optimization is deterministic for a fixed seed") {
  SimplexOptions opts;
  opts.seed = 42;
  auto f = [](const Eigen::Vector4d& x) {
    return std::sin(3 * x[0]) + x.squaredNorm() + 0.5 * std::cos(2 * x[1]);
  };
  SimplexResult a = minimize_simplex(f, Eigen::Vector4d(0.5, 0.5, 0.5, 0.5), opts);
  SimplexResult b = minimize_simplex(f, Eigen::Vector4d(0.5, 0.5, 0.5, 0.5), opts);
  CHECK(a.x == b.x);
  CHECK(a.f == b.f);
  CHECK(a.evals == b.evals);
}

TEST_CASE("a hopeless budget reports non-convergence") {
  SimplexOptions opts;
  opts.max_iters = 3;
  opts.restarts = 0;
  SimplexResult r = minimize_simplex(rosenbrock, Eigen::Vector4d(-1.2, 1.0, -1.2, 1.0), opts);
  CHECK_FALSE(r.converged);
}

TEST_CASE("restarts can only improve the best value") {
  auto f = [](const Eigen::Vector4d& x) { return (x - Eigen::Vector4d(2, 0, 0, 0)).squaredNorm(); };
  SimplexOptions none, many;
  none.restarts = 0;
  many.restarts = 5;
  double f_none = minimize_simplex(f, Eigen::Vector4d::Zero(), none).f;
  double f_many = minimize_simplex(f, Eigen::Vector4d::Zero(), many).f;
  CHECK(f_many <= f_none + 1e-15);
}
