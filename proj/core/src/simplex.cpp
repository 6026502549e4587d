#include "povatlas/simplex.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "povatlas/rng.hpp"

namespace povatlas {

namespace {

struct Attempt {
  Eigen::Vector4d x;
  double f;
  bool converged;
  long long evals;
};

Attempt run_once(const std::function<double(const Eigen::Vector4d&)>& objective,
                 const Eigen::Vector4d& x0, const SimplexOptions& opts) {
  constexpr int kDim = 4;
  constexpr int kVerts = kDim + 1;
  std::array<Eigen::Vector4d, kVerts> xs;
  std::array<double, kVerts> fs;
  long long evals = 0;
  auto eval = [&](const Eigen::Vector4d& x) {
    ++evals;
    return objective(x);
  };

  xs[0] = x0;
  fs[0] = eval(xs[0]);
  for (int i = 0; i < kDim; ++i) {
    xs[i + 1] = x0;
    xs[i + 1][i] += opts.initial_scale;
    fs[i + 1] = eval(xs[i + 1]);
  }

  std::array<int, kVerts> order;
  bool converged = false;
  for (int it = 0; it < opts.max_iters; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    int best = order[0], next = order[kVerts - 2], worst = order[kVerts - 1];

    if (fs[worst] - fs[best] < opts.spread_tol) {
      converged = true;
      break;
    }

    Eigen::Vector4d centroid = Eigen::Vector4d::Zero();
    for (int i = 0; i < kVerts; ++i)
      if (i != worst) centroid += xs[i];
    centroid /= kDim;

    Eigen::Vector4d xr = centroid + (centroid - xs[worst]);
    double fr = eval(xr);
    if (fr < fs[best]) {
      Eigen::Vector4d xe = centroid + 2.0 * (centroid - xs[worst]);
      double fe = eval(xe);
      if (fe < fr) {
        xs[worst] = xe;
        fs[worst] = fe;
      } else {
        xs[worst] = xr;
        fs[worst] = fr;
      }
    } else if (fr < fs[next]) {
      xs[worst] = xr;
      fs[worst] = fr;
    } else {
      bool outside = fr < fs[worst];
      Eigen::Vector4d xc =
          centroid + 0.5 * ((outside ? xr : xs[worst]) - centroid);
      double fc = eval(xc);
      if (fc < (outside ? fr : fs[worst])) {
        xs[worst] = xc;
        fs[worst] = fc;
      } else {
        for (int i = 0; i < kVerts; ++i) {
          if (i == best) continue;
          xs[i] = xs[best] + 0.5 * (xs[i] - xs[best]);
          fs[i] = eval(xs[i]);
        }
      }
    }
  }

  int arg = 0;
  for (int i = 1; i < kVerts; ++i)
    if (fs[i] < fs[arg]) arg = i;
  return {xs[arg], fs[arg], converged, evals};
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(const Eigen::Vector4d&)>& objective,
                               const Eigen::Vector4d& x0, const SimplexOptions& opts) {
  Rng rng(opts.seed);
  SimplexResult best;
  best.evals = 0;
  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    Eigen::Vector4d start = x0;
    if (attempt > 0)
      for (int k = 0; k < 4; ++k)
        start[k] += rng.uniform(-opts.restart_scale, opts.restart_scale);
    Attempt a = run_once(objective, start, opts);
    best.evals += a.evals;
    if (attempt == 0 || a.f < best.f) {
      best.x = a.x;
      best.f = a.f;
      best.converged = a.converged;
    }
  }
  return best;
}

}  // namespace povatlas
