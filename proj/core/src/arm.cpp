#include "povatlas/arm.hpp"

#include <cmath>

#include "povatlas/errors.hpp"

namespace povatlas {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kSingularTol = 1e-8;
}  // namespace

double wrap_angle(double a) {
  double w = a - kTwoPi * std::nearbyint(a / kTwoPi);
  if (w <= -3.1415926535897932384626433832795) w += kTwoPi;
  return w;
}

Pose forward_pose(const Motor& m) {
  double c1 = m[0];
  double c2 = c1 + m[1];
  double c3 = c2 + m[2];
  Pose p;
  p.x = std::cos(c1) + std::cos(c2) + std::cos(c3);
  p.y = std::sin(c1) + std::sin(c2) + std::sin(c3);
  p.alpha = c3 + m[3];
  return p;
}

Jacobian jacobian(const Motor& m) {
  double c1 = m[0];
  double c2 = c1 + m[1];
  double c3 = c2 + m[2];
  double s[3] = {std::sin(c1), std::sin(c2), std::sin(c3)};
  double c[3] = {std::cos(c1), std::cos(c2), std::cos(c3)};
  Jacobian j;
  for (int k = 0; k < 4; ++k) {
    double sx = 0.0, sy = 0.0;
    for (int i = k; i < 3; ++i) {  // segment i depends on joints 1..i+1
      sx -= s[i];
      sy += c[i];
    }
    j(0, k) = sx;
    j(1, k) = sy;
    j(2, k) = 1.0;
  }
  return j;
}

Motor kernel_direction(const Motor& m, const Motor* previous) {
  Eigen::JacobiSVD<Jacobian> svd(jacobian(m), Eigen::ComputeFullV);
  if (svd.singularValues()(2) < kSingularTol)
    throw SingularConfiguration("arm Jacobian is rank-deficient");
  Motor k = svd.matrixV().col(3);
  if (previous != nullptr && k.dot(*previous) < 0.0) k = -k;
  return k;
}

double motor_distance(const Motor& a, const Motor& b) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    double d = a[k] - b[k];
    double w = d - kTwoPi * std::nearbyint(d / kTwoPi);
    s += w * w;
  }
  return std::sqrt(s);
}

}  // namespace povatlas
