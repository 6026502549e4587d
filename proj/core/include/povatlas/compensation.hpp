#pragma once

#include <cstdint>
#include <vector>

#include "povatlas/environment.hpp"
#include "povatlas/optics.hpp"
#include "povatlas/pov.hpp"
#include "povatlas/simplex.hpp"

namespace povatlas {

struct CompensationParams {
  double xi = 1e-3;           // kinematic residual threshold (pose norm)
  double sensory_tol = 1e-3;  // sensory residual threshold, relative to max intensity
  SimplexOptions simplex;
};

enum class FailureReason { None, NonCompensable, SensoryMismatch };

struct CompensationOutcome {
  bool success = false;
  FailureReason reason = FailureReason::None;
  Motor m_after;  // equals m_prev on failure ("the arm resumes its configuration")
  double kinematic_residual = 0.0;
  double sensory_residual = 0.0;
  bool solver_converged = false;
  long long evals = 0;
};

// Minimize the wrapped pose error from m_prev toward target; accept only if
// the kinematic residual beats xi AND the sensed state at the solution, in
// the changed world, still matches sensory_target within sensory_tol.
CompensationOutcome compensate(const Motor& m_prev, const Pose& target,
                               const SensoryState& sensory_target, const Retina& retina,
                               const ObjectState& world_after,
                               const CompensationParams& params = {});

enum class EpisodeKind { Spatial, State };

struct EpisodeRecord {
  int index = 0;
  EpisodeKind kind = EpisodeKind::Spatial;
  Eigen::Vector2d delta{0.0, 0.0};
  Eigen::Vector2i node{0, 0};  // doubled grid coordinates of the object center
  bool success = false;
  FailureReason reason = FailureReason::None;
  double kinematic_residual = 0.0;
  double sensory_residual = 0.0;
  int pov_index = -1;  // atlas entry created by the episode, if any
};

struct SpatialAtlas {
  std::vector<PointOfView> povs;
  std::vector<Eigen::Vector2i> grid_index;  // doubled grid coordinates per POV
  int origin_pov_index = 0;
};

struct ExploreResult {
  SpatialAtlas atlas;
  std::vector<EpisodeRecord> episodes;
};

struct ExploreParams {
  GridConfig grid;
  PovParams pov;
  CompensationParams compensation;
  std::uint64_t seed = 0;  // stream for per-episode solver restarts
};

// Run the exploration loop: for every environmental change, attempt to
// restore the reference sensory experience; each compensated displacement
// contributes one point of view to the atlas. Displacement targets are
// anchored to the initial pose plus the object's cumulative translation, so
// the discovered atlas is a rigid copy of the explored lattice. Targets whose
// tip would fall within distance 1 of the base are attempted but contribute
// no POV (the manifold there is disconnected).
ExploreResult explore(const Retina& retina, const ObjectState& initial,
                      const std::vector<EnvChange>& schedule, const Motor& m0,
                      const ExploreParams& params);

}  // namespace povatlas
