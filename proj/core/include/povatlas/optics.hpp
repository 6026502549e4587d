#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "povatlas/arm.hpp"
#include "povatlas/rng.hpp"

namespace povatlas {

// 1-D retina behind a pinhole lens at the arm tip; receptor positions are
// drawn once per experiment and never change.
struct Retina {
  std::vector<double> receptors;
};

// Receptor intensities; entry r sums the responses to all visible sources.
using SensoryState = Eigen::VectorXd;

struct Projection {
  double p_l;  // position of the source image on the retina axis
  double d_l;  // distance from the lens to the source
};

// receptor positions uniform on [-0.5, 0.5]
Retina make_retina(Rng& rng, int receptors = 6);

// Pinhole projection with focal length 1: p_l = tan(bearing) where bearing is
// the source direction in the sensor frame. Sources at or behind the lens
// plane produce no image (nullopt). Throws DegenerateSource when the source
// coincides with the lens center (d_l < 1e-9).
std::optional<Projection> project_source(const Pose& pose, const Eigen::Vector2d& source);

// intensity(r) = sum over visible sources of exp(-(p_r - p_l)^2) / d_l
SensoryState sense(const Retina& retina, const Pose& pose,
                   const std::vector<Eigen::Vector2d>& sources);

}  // namespace povatlas
