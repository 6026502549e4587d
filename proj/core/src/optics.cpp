#include "povatlas/optics.hpp"

#include <cmath>

#include "povatlas/errors.hpp"

namespace povatlas {

Retina make_retina(Rng& rng, int receptors) {
  Retina r;
  r.receptors.resize(static_cast<std::size_t>(receptors));
  for (auto& p : r.receptors) p = rng.uniform(-0.5, 0.5);
  return r;
}

std::optional<Projection> project_source(const Pose& pose, const Eigen::Vector2d& source) {
  double dx = source.x() - pose.x;
  double dy = source.y() - pose.y;
  double d = std::sqrt(dx * dx + dy * dy);
  if (d < 1e-9) throw DegenerateSource("light source coincides with the lens center");
  double ca = std::cos(pose.alpha);
  double sa = std::sin(pose.alpha);
  double fwd = ca * dx + sa * dy;  // component along the optical axis
  if (fwd <= 0.0) return std::nullopt;
  double lat = -sa * dx + ca * dy;
  return Projection{lat / fwd, d};
}

SensoryState sense(const Retina& retina, const Pose& pose,
                   const std::vector<Eigen::Vector2d>& sources) {
  SensoryState s = SensoryState::Zero(static_cast<Eigen::Index>(retina.receptors.size()));
  for (const auto& src : sources) {
    auto proj = project_source(pose, src);
    if (!proj) continue;
    for (Eigen::Index r = 0; r < s.size(); ++r) {
      double u = retina.receptors[static_cast<std::size_t>(r)] - proj->p_l;
      s[r] += std::exp(-u * u) / proj->d_l;
    }
  }
  return s;
}

}  // namespace povatlas
