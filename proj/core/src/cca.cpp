#include "povatlas/cca.hpp"

#include <cmath>
#include <numeric>

#include "povatlas/errors.hpp"
#include "povatlas/rng.hpp"

namespace povatlas {

Eigen::MatrixXd classical_scaling(const Eigen::MatrixXd& D, int dim) {
  Eigen::Index n = D.rows();
  Eigen::MatrixXd sq = D.array().square();
  Eigen::VectorXd rmean = sq.rowwise().mean();
  double gmean = rmean.mean();
  Eigen::MatrixXd B(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      B(i, j) = -0.5 * (sq(i, j) - rmean(i) - rmean(j) + gmean);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, dim);
  for (int d = 0; d < dim && d < n; ++d) {
    double ev = es.eigenvalues()(n - 1 - d);  // eigenvalues come ascending
    if (ev > 0.0) X.col(d) = es.eigenvectors().col(n - 1 - d) * std::sqrt(ev);
  }
  return X;
}

CcaResult cca_fit(const Eigen::MatrixXd& D, int dim, const CcaParams& params) {
  Eigen::Index n = D.rows();
  if (n < dim + 1) throw DegenerateInput("need at least dim + 1 points to embed");

  CcaResult result;
  double dmax = D.maxCoeff();
  if (dmax <= 0.0) {  // all points coincide; that is the answer, not an error
    result.embedding = Eigen::MatrixXd::Zero(n, dim);
    result.stress.assign(static_cast<std::size_t>(std::max(params.epochs, 0)), 0.0);
    return result;
  }

  Eigen::MatrixXd X = classical_scaling(D, dim);
  Rng rng(params.seed);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  int T = params.epochs;
  for (int t = 0; t < T; ++t) {
    double frac = T > 1 ? static_cast<double>(t) / (T - 1) : 0.0;
    double alpha = params.alpha0 + (params.alpha1 - params.alpha0) * frac;
    double lambda = dmax * std::pow(params.lambda_final_frac, frac);

    rng.shuffle(order);
    for (int i : order) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        double l2 = 0.0;
        for (int d = 0; d < dim; ++d) {
          double v = X(j, d) - X(i, d);
          l2 += v * v;
        }
        double L = std::sqrt(l2);
        if (L > lambda || L <= 0.0) continue;
        double g = alpha * (D(i, j) - L) / L;
        for (int d = 0; d < dim; ++d) X(j, d) += g * (X(j, d) - X(i, d));
      }
    }
    result.stress.push_back(cca_stress(D, X, lambda));
  }
  result.embedding = std::move(X);
  return result;
}

Eigen::MatrixXd embedding_distances(const Eigen::MatrixXd& E) {
  Eigen::Index n = E.rows();
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double d = (E.row(i) - E.row(j)).norm();
      D(i, j) = d;
      D(j, i) = d;
    }
  return D;
}

double cca_stress(const Eigen::MatrixXd& D, const Eigen::MatrixXd& E, double lambda) {
  Eigen::Index n = D.rows();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double L = (E.row(i) - E.row(j)).norm();
      if (L <= lambda) {
        double d = D(i, j) - L;
        s += d * d;
      }
    }
  return s;
}

}  // namespace povatlas
