#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace povatlas {

struct CcaParams {
  int epochs = 50;
  double alpha0 = 0.5;             // learning rate, linear alpha0 -> alpha1
  double alpha1 = 0.01;
  double lambda_final_frac = 0.05; // neighborhood radius, geometric max(D) -> frac*max(D)
  std::uint64_t seed = 7;          // pivot-order shuffling
};

// Classical-scaling coordinates: top-dim eigenvectors of the double-centered
// squared-distance matrix, scaled by sqrt of the (clamped) eigenvalues.
Eigen::MatrixXd classical_scaling(const Eigen::MatrixXd& D, int dim);

struct CcaResult {
  Eigen::MatrixXd embedding;   // n x dim
  std::vector<double> stress;  // per epoch, at that epoch's neighborhood radius
};

// Curvilinear component analysis: stochastic pivot descent on
// sum (D_ij - L_ij)^2 F_lambda(L_ij), F a step function, initialized from
// classical scaling. Deterministic given params.seed.
CcaResult cca_fit(const Eigen::MatrixXd& D, int dim, const CcaParams& params = {});

// Pairwise Euclidean distances of embedding rows.
Eigen::MatrixXd embedding_distances(const Eigen::MatrixXd& E);

double cca_stress(const Eigen::MatrixXd& D, const Eigen::MatrixXd& E, double lambda);

}  // namespace povatlas
