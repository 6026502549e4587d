#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "povatlas/alignment.hpp"
#include "povatlas/errors.hpp"
#include "povatlas/rng.hpp"

using namespace povatlas;

namespace {

std::vector<Eigen::Vector2d> random_layout(Rng& rng, int n) {
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(rng.uniform(-3, 3), rng.uniform(-3, 3));
  return pts;
}

}  // namespace

TEST_CASE("an affine copy aligns exactly in two dimensions") {
  Rng rng(1);
  auto ref = random_layout(rng, 40);

  Eigen::Matrix2d A;
  A << 1.3, -0.4, 0.9, 0.7;  // shear + rotation + scale
  Eigen::Vector2d b(2.0, -1.0);

  Eigen::MatrixXd E(40, 2);
  for (int i = 0; i < 40; ++i) E.row(i) = (A * ref[static_cast<std::size_t>(i)] + b).transpose();

  CHECK(affine_alignment_residual(E, ref) < 1e-10);
}

TEST_CASE("noise shows up as a proportional residual") {
  Rng rng(2);
  auto ref = random_layout(rng, 60);

  Eigen::MatrixXd E(60, 2);
  for (int i = 0; i < 60; ++i) E.row(i) = ref[static_cast<std::size_t>(i)].transpose();
  double clean = affine_alignment_residual(E, ref);

  Eigen::MatrixXd noisy = E;
  for (int i = 0; i < 60; ++i)
    noisy.row(i) += Eigen::RowVector2d(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
  double perturbed = affine_alignment_residual(noisy, ref);

  CHECK(clean < 1e-10);
  CHECK(perturbed > 10 * clean + 0.01);
}

TEST_CASE("a similarity into three dimensions aligns exactly") {
  Rng rng(3);
  auto ref = random_layout(rng, 30);

  // embed the plane into 3-d: rotate about an arbitrary axis and scale
  Eigen::Matrix3d R =
      Eigen::AngleAxisd(0.8, Eigen::Vector3d(1, 2, 0.5).normalized()).toRotationMatrix();
  const double s = 1.7;
  Eigen::MatrixXd E(30, 3);
  for (int i = 0; i < 30; ++i) {
    Eigen::Vector3d lifted(ref[static_cast<std::size_t>(i)].x(),
                           ref[static_cast<std::size_t>(i)].y(), 0.0);
    E.row(i) = (s * (R * lifted) + Eigen::Vector3d(0.3, -0.2, 5.0)).transpose();
  }
  CHECK(affine_alignment_residual(E, ref) < 1e-10);
}

TEST_CASE("independent out-of-plane noise projects out") {
  Rng rng(4);
  auto ref = random_layout(rng, 50);
  Eigen::MatrixXd E(50, 3);
  for (int i = 0; i < 50; ++i)
    E.row(i) = Eigen::RowVector3d(ref[static_cast<std::size_t>(i)].x(),
                                  ref[static_cast<std::size_t>(i)].y(), rng.uniform(-2, 2));
  CHECK(affine_alignment_residual(E, ref) < 0.05);
}

TEST_CASE("a similarity cannot absorb in-plane anisotropy") {
  // 2-D fits are affine (shear allowed); 3-D fits are similarity + projection,
  // so a stretched copy must keep a residual
  Rng rng(6);
  auto ref = random_layout(rng, 50);
  Eigen::MatrixXd E(50, 3);
  for (int i = 0; i < 50; ++i)
    E.row(i) = Eigen::RowVector3d(2.0 * ref[static_cast<std::size_t>(i)].x(),
                                  ref[static_cast<std::size_t>(i)].y(), 0.0);
  CHECK(affine_alignment_residual(E, ref) > 0.05);

  Eigen::MatrixXd E2 = E.leftCols(2);
  CHECK(affine_alignment_residual(E2, ref) < 1e-10);  // affine absorbs the stretch
}

TEST_CASE("one displaced point contributes its share of the rms") {
  Rng rng(7);
  const int n = 100;
  auto ref = random_layout(rng, n);
  Eigen::MatrixXd E(n, 2);
  for (int i = 0; i < n; ++i) E.row(i) = ref[static_cast<std::size_t>(i)].transpose();

  double diam = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      diam = std::max(diam,
                      (ref[static_cast<std::size_t>(i)] - ref[static_cast<std::size_t>(j)]).norm());
  E(17, 0) += 0.1 * diam;

  // rms of a single 10%-of-diameter outlier is 0.1/sqrt(n) (the fit may absorb a little)
  double r = affine_alignment_residual(E, ref);
  CHECK(r > 0.5 * 0.1 / std::sqrt(static_cast<double>(n)));
  CHECK(r < 1.2 * 0.1 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("shape mismatches are rejected") {
  Rng rng(5);
  auto ref = random_layout(rng, 10);
  CHECK_THROWS_AS(affine_alignment_residual(Eigen::MatrixXd::Zero(9, 2), ref),
                  DimensionMismatch);
  CHECK_THROWS_AS(affine_alignment_residual(Eigen::MatrixXd::Zero(10, 4), ref),
                  DimensionMismatch);
}
