#include "povatlas/pov.hpp"

#include <cmath>

#include "povatlas/errors.hpp"

namespace povatlas {

namespace {

Eigen::Vector3d pose_residual(const Pose& target, const Pose& p) {
  return {target.x - p.x, target.y - p.y, wrap_angle(target.alpha - p.alpha)};
}

Motor wrapped_step(const Motor& from, const Motor& to) {
  Motor d;
  for (int k = 0; k < 4; ++k) d[k] = wrap_angle(to[k] - from[k]);
  return d;
}

}  // namespace

PointOfView sample_pov(const Motor& m0, const PovParams& params) {
  Pose tag = forward_pose(m0);
  if (std::sqrt(tag.x * tag.x + tag.y * tag.y) < 1.0)
    throw DisjointManifold("tip within distance 1 of the base: manifold is disconnected");

  std::vector<Motor> raw;
  raw.reserve(20000);
  raw.push_back(m0);

  Motor m = m0;
  Motor prev_k = Motor::Zero();
  bool have_prev = false;
  for (long long step = 0;; ++step) {
    if (step >= params.step_budget)
      throw NonClosure("kernel walk did not close within the step budget");

    Eigen::JacobiSVD<Jacobian> svd(jacobian(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(2) < 1e-8)
      throw SingularConfiguration("arm Jacobian is rank-deficient");
    Motor k = svd.matrixV().col(3);
    if (have_prev && k.dot(prev_k) < 0.0) k = -k;

    m += params.eps * k;
    // one Gauss-Newton step back onto the pose manifold (Jacobian reused from
    // the pre-step state; the correction itself is O(eps^2))
    m += svd.solve(pose_residual(tag, forward_pose(m)));

    raw.push_back(m);
    prev_k = k;
    have_prev = true;

    if (static_cast<int>(raw.size()) >= params.min_samples &&
        motor_distance(m, m0) < params.closure_tol)
      break;
  }

  // closed polyline arc lengths, closing segment included
  std::size_t n = raw.size();
  std::vector<double> cum(n + 1);
  cum[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    cum[i + 1] = cum[i] + motor_distance(raw[i], raw[(i + 1) % n]);
  double total = cum[n];

  PointOfView pov;
  pov.seed = m0;
  pov.pose_tag = tag;
  pov.members.reserve(static_cast<std::size_t>(params.members));
  std::size_t seg = 0;
  for (int j = 0; j < params.members; ++j) {
    double s = total * j / params.members;
    while (seg + 1 < n + 1 && cum[seg + 1] <= s) ++seg;
    const Motor& a = raw[seg % n];
    const Motor& b = raw[(seg + 1) % n];
    double len = cum[seg + 1] - cum[seg];
    double t = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    pov.members.push_back(a + t * wrapped_step(a, b));
  }
  return pov;
}

double pov_pose_spread(const PointOfView& p) {
  double worst = 0.0;
  for (const Motor& m : p.members) {
    Pose q = forward_pose(m);
    double dx = q.x - p.pose_tag.x;
    double dy = q.y - p.pose_tag.y;
    double da = wrap_angle(q.alpha - p.pose_tag.alpha);
    worst = std::max(worst, std::sqrt(dx * dx + dy * dy + da * da));
  }
  return worst;
}

}  // namespace povatlas
