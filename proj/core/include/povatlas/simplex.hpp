#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace povatlas {

struct SimplexOptions {
  double initial_scale = 0.2;   // offset of the initial simplex vertices, radians
  double spread_tol = 1e-10;    // convergence tolerance on the objective spread
  int max_iters = 2000;
  int restarts = 5;             // extra attempts from perturbed starts
  double restart_scale = 0.5;   // uniform perturbation half-width, radians
  std::uint64_t seed = 0;       // stream for the restart perturbations
};

struct SimplexResult {
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  double f = 0.0;
  bool converged = false;  // best attempt met spread_tol; false = budget exceeded
  long long evals = 0;
};

// Nelder-Mead (reflection 1, expansion 2, contraction 0.5, shrink 0.5) with
// restarted attempts from randomly perturbed starts; the best attempt wins.
SimplexResult minimize_simplex(const std::function<double(const Eigen::Vector4d&)>& objective,
                               const Eigen::Vector4d& x0, const SimplexOptions& opts = {});

}  // namespace povatlas
