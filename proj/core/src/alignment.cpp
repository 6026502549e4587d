#include "povatlas/alignment.hpp"

#include <cmath>

#include "povatlas/errors.hpp"

namespace povatlas {

double affine_alignment_residual(const Eigen::MatrixXd& E,
                                 const std::vector<Eigen::Vector2d>& reference) {
  Eigen::Index n = E.rows();
  if (n != static_cast<Eigen::Index>(reference.size()))
    throw DimensionMismatch("embedding and reference sizes differ");
  if (E.cols() != 2 && E.cols() != 3)
    throw DimensionMismatch("embedding must be 2-D or 3-D");
  if (n < 2) return 0.0;

  Eigen::MatrixXd R(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) R.row(i) = reference[static_cast<std::size_t>(i)];

  Eigen::MatrixXd res;
  if (E.cols() == 2) {
    Eigen::MatrixXd A(n, 3);
    A.leftCols(2) = E;
    A.col(2).setOnes();
    Eigen::MatrixXd sol = A.colPivHouseholderQr().solve(R);
    res = A * sol - R;
  } else {
    // similarity + projection: scaled partial Procrustes onto the plane
    Eigen::RowVector3d ce = E.colwise().mean();
    Eigen::RowVector2d cr = R.colwise().mean();
    Eigen::MatrixXd Ec = E.rowwise() - ce;
    Eigen::MatrixXd Rc = R.rowwise() - cr;
    Eigen::Matrix<double, 2, 3> C = Rc.transpose() * Ec;
    Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(
        C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix<double, 2, 3> M =
        svd.matrixU() * svd.matrixV().leftCols(2).transpose();
    // least-squares scale for the projected coordinates (the out-of-plane
    // component carries no signal, so it must not deflate the scale)
    Eigen::MatrixXd P = Ec * M.transpose();
    double denom = P.squaredNorm();
    double s = denom > 0.0 ? (P.array() * Rc.array()).sum() / denom : 0.0;
    res = s * P - Rc;
  }

  double rms = std::sqrt(res.rowwise().squaredNorm().mean());
  double diam = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      diam = std::max(diam, (R.row(i) - R.row(j)).norm());
  return diam > 0.0 ? rms / diam : rms;
}

}  // namespace povatlas
