#pragma once

#include <cstdint>
#include <vector>

#include "povatlas/arm.hpp"

namespace povatlas {

struct PovParams {
  double eps = 1e-3;          // kernel-walk step size
  int min_samples = 50;       // samples required before closure may trigger
  double closure_tol = 1e-2;  // motor distance back to the seed that closes the loop
  int members = 100;          // resampled loop size
  double pose_tol = 2e-2;     // admissible pose deviation of members from the tag
  long long step_budget = 10'000'000;
};

// Closed 1-D manifold of motor states sharing one sensor pose, sampled at
// `members` equally spaced stations along the loop. members[0] is the seed.
struct PointOfView {
  Motor seed;
  std::vector<Motor> members;
  Pose pose_tag;  // forward_pose(seed)
};

// Walk the Jacobian null space from m0 with sign-consistent steps, applying
// one Gauss-Newton pose correction per step, until the loop closes; then
// resample at equal arc length (arc length in the torus motor metric).
// Throws DisjointManifold when the tip is within distance 1 of the base
// (the manifold splits in two there), SingularConfiguration on rank loss,
// and NonClosure when the step budget runs out.
PointOfView sample_pov(const Motor& m0, const PovParams& params = {});

// max over members of the Euclidean (x, y, wrapped alpha) deviation from the tag
double pov_pose_spread(const PointOfView& p);

}  // namespace povatlas
