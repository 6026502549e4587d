#include "povatlas/compensation.hpp"

#include <cmath>
#include <limits>

#include "povatlas/errors.hpp"
#include "povatlas/rng.hpp"

namespace povatlas {

namespace {

double relative_sensory_residual(const SensoryState& found, const SensoryState& target) {
  double scale = target.cwiseAbs().maxCoeff();
  double dev = (found - target).cwiseAbs().maxCoeff();
  if (scale <= 0.0) return dev > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return dev / scale;
}

}  // namespace

CompensationOutcome compensate(const Motor& m_prev, const Pose& target,
                               const SensoryState& sensory_target, const Retina& retina,
                               const ObjectState& world_after,
                               const CompensationParams& params) {
  auto objective = [&](const Eigen::Vector4d& m) {
    Pose p = forward_pose(m);
    double dx = p.x - target.x;
    double dy = p.y - target.y;
    double da = wrap_angle(p.alpha - target.alpha);
    return dx * dx + dy * dy + da * da;
  };
  SimplexResult r = minimize_simplex(objective, m_prev, params.simplex);

  CompensationOutcome out;
  out.kinematic_residual = std::sqrt(r.f);
  out.solver_converged = r.converged;
  out.evals = r.evals;
  if (out.kinematic_residual >= params.xi) {
    out.reason = FailureReason::NonCompensable;
    out.m_after = m_prev;
    return out;
  }
  SensoryState found = sense(retina, forward_pose(r.x), world_after.sources());
  out.sensory_residual = relative_sensory_residual(found, sensory_target);
  if (out.sensory_residual >= params.sensory_tol) {
    out.reason = FailureReason::SensoryMismatch;
    out.m_after = m_prev;
    return out;
  }
  out.success = true;
  out.m_after = r.x;
  return out;
}

ExploreResult explore(const Retina& retina, const ObjectState& initial,
                      const std::vector<EnvChange>& schedule, const Motor& m0,
                      const ExploreParams& params) {
  Pose pose0 = forward_pose(m0);
  if (std::sqrt(pose0.x * pose0.x + pose0.y * pose0.y) < 1.0)
    throw DisjointManifold("initial tip within distance 1 of the base");

  ExploreResult result;
  result.atlas.povs.push_back(sample_pov(m0, params.pov));
  result.atlas.grid_index.emplace_back(doubled_grid_coords(params.grid, initial.center));
  result.atlas.origin_pov_index = 0;

  // Reference experience: the sensory state at the initial relative
  // arm/object configuration. Re-acquired whenever the sources redistribute,
  // since the old experience then no longer exists anywhere in the world.
  ObjectState obj = initial;
  Eigen::Vector2d c0 = initial.center;
  auto nominal_pose = [&](const Eigen::Vector2d& center) {
    Pose p = pose0;
    p.x += center.x() - c0.x();
    p.y += center.y() - c0.y();
    return p;
  };
  SensoryState s_ref = sense(retina, pose0, obj.sources());

  Motor m_prev = m0;
  Rng seeder(params.seed);
  for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
    ObjectState obj_after = apply_change(obj, schedule[idx]);
    bool is_state = std::holds_alternative<StateChange>(schedule[idx]);

    EpisodeRecord ep;
    ep.index = static_cast<int>(idx);
    ep.kind = is_state ? EpisodeKind::State : EpisodeKind::Spatial;
    ep.delta = is_state ? Eigen::Vector2d::Zero().eval()
                        : std::get<SpatialChange>(schedule[idx]).delta;
    ep.node = doubled_grid_coords(params.grid, obj_after.center);

    // A displacement asks for the initial pose shifted with the object; a
    // state change carries no displacement, so the arm tries to stay put.
    Pose target = is_state ? forward_pose(m_prev) : nominal_pose(obj_after.center);

    CompensationParams comp = params.compensation;
    comp.simplex.seed = seeder.fork("episode", idx).seed();
    CompensationOutcome outcome = compensate(m_prev, target, s_ref, retina, obj_after, comp);

    ep.success = outcome.success;
    ep.reason = outcome.reason;
    ep.kinematic_residual = outcome.kinematic_residual;
    ep.sensory_residual = outcome.sensory_residual;

    if (outcome.success) {
      m_prev = outcome.m_after;
      double r = std::hypot(target.x, target.y);
      if (!is_state && r >= 1.0) {
        result.atlas.povs.push_back(sample_pov(outcome.m_after, params.pov));
        result.atlas.grid_index.emplace_back(ep.node);
        ep.pov_index = static_cast<int>(result.atlas.povs.size()) - 1;
      }
    }
    if (is_state) s_ref = sense(retina, nominal_pose(obj_after.center), obj_after.sources());

    obj = std::move(obj_after);
    result.episodes.push_back(ep);
  }
  return result;
}

}  // namespace povatlas
