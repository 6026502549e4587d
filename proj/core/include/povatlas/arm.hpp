#pragma once

#include <Eigen/Dense>

namespace povatlas {

// Four hinge-joint angles in radians; periodic mod 2*pi but stored unwrapped.
using Motor = Eigen::Vector4d;

// Partial derivatives of (x, y, alpha) with respect to the four joints.
using Jacobian = Eigen::Matrix<double, 3, 4>;

// Sensor position and orientation at the arm tip.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double alpha = 0.0;
};

// shortest signed angular difference, in (-pi, pi]
double wrap_angle(double a);

// Planar serial chain: three unit segments, base at the origin, each joint
// rotating relative to the previous segment; the fourth joint only rotates
// the sensor, so alpha is the sum of all four angles.
Pose forward_pose(const Motor& m);

Jacobian jacobian(const Motor& m);

// Unit null-space direction of the Jacobian (smallest right singular vector).
// When `previous` is given the sign is chosen so k . previous >= 0. Throws
// SingularConfiguration when the Jacobian drops below rank 3.
Motor kernel_direction(const Motor& m, const Motor* previous = nullptr);

// Flat-torus L2 metric: sqrt(sum of squared per-joint wrapped differences).
// Per-joint term in [0, pi], so the total is in [0, 2*pi].
double motor_distance(const Motor& a, const Motor& b);

}  // namespace povatlas
