#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "povatlas/compensation.hpp"
#include "povatlas/environment.hpp"
#include "povatlas/optics.hpp"

using namespace povatlas;

namespace {

const Motor kM0(0.1, -1.5, 2.2, -3.0);

struct Scene {
  Retina retina;
  ObjectState object;
  Pose pose0;
  SensoryState s_ref;

  Scene() {
    Rng rng(2);
    retina = make_retina(rng, 6);
    object = init_object(rng, 8, 1.5);
    pose0 = forward_pose(kM0);
    s_ref = sense(retina, pose0, object.sources());
  }
};

}  // namespace

TEST_CASE("an unmoved world needs no compensation") {
  Scene sc;
  CompensationOutcome out = compensate(kM0, sc.pose0, sc.s_ref, sc.retina, sc.object);
  CHECK(out.success);
  CHECK(out.reason == FailureReason::None);
  CHECK(out.kinematic_residual < 1e-3);
  CHECK(out.sensory_residual < 1e-3);
}

TEST_CASE("a rigid displacement is compensated and restores the sensation") {
  Scene sc;
  Eigen::Vector2d delta(0.4, 0.3);
  ObjectState moved = apply_change(sc.object, SpatialChange{delta});
  Pose target{sc.pose0.x + delta.x(), sc.pose0.y + delta.y(), sc.pose0.alpha};

  CompensationOutcome out = compensate(kM0, target, sc.s_ref, sc.retina, moved);
  REQUIRE(out.success);

  Pose reached = forward_pose(out.m_after);
  double pose_err = std::hypot(reached.x - target.x, reached.y - target.y);
  CHECK(pose_err < 1e-3);
  CHECK(std::abs(wrap_angle(reached.alpha - target.alpha)) < 1e-3);

  SensoryState s = sense(sc.retina, reached, moved.sources());
  CHECK((s - sc.s_ref).cwiseAbs().maxCoeff() / sc.s_ref.cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("a displacement beyond reach fails and leaves the arm in place") {
  Scene sc;
  Eigen::Vector2d delta(10.0, 0.0);
  ObjectState moved = apply_change(sc.object, SpatialChange{delta});
  Pose target{sc.pose0.x + delta.x(), sc.pose0.y + delta.y(), sc.pose0.alpha};

  CompensationOutcome out = compensate(kM0, target, sc.s_ref, sc.retina, moved);
  CHECK_FALSE(out.success);
  CHECK(out.reason == FailureReason::NonCompensable);
  CHECK(out.m_after == kM0);
}

TEST_CASE("a source redistribution cannot be compensated by moving") {
  Scene sc;
  Rng rng(77);
  std::vector<Eigen::Vector2d> fresh;
  for (int i = 0; i < 8; ++i) {
    auto [x, y] = rng.in_disk(1.5);
    fresh.emplace_back(x, y);
  }
  ObjectState redistributed = apply_change(sc.object, StateChange{fresh});

  // holding position is kinematically trivial, but the sensation has changed
  CompensationOutcome out = compensate(kM0, sc.pose0, sc.s_ref, sc.retina, redistributed);
  CHECK_FALSE(out.success);
  CHECK(out.reason == FailureReason::SensoryMismatch);
  CHECK(out.kinematic_residual < 1e-3);
  CHECK(out.sensory_residual > 1e-3);
  CHECK(out.m_after == kM0);
}

TEST_CASE("exploration builds a rigid copy of the lattice") {
  Rng rng(5);
  Retina retina = make_retina(rng, 6);
  ObjectState object = init_object(rng, 8, 1.5);

  GridConfig grid;
  grid.n = 3;
  grid.extent = 1.0;

  Rng sched_rng(6);
  auto schedule = exploration_schedule(sched_rng, grid, 0.3, 8, 1.5);

  ExploreParams params;
  params.grid = grid;
  params.seed = 11;
  ExploreResult res = explore(retina, object, schedule, kM0, params);

  REQUIRE(!res.atlas.povs.empty());
  CHECK(res.atlas.origin_pov_index == 0);
  CHECK(res.atlas.grid_index[0] == Eigen::Vector2i(0, 0));
  REQUIRE(res.atlas.grid_index.size() == res.atlas.povs.size());

  // every episode is recorded, in order, with consistent bookkeeping
  CHECK(res.episodes.size() == schedule.size());
  int state_successes = 0, spatial_successes = 0;
  for (std::size_t i = 0; i < res.episodes.size(); ++i) {
    const auto& e = res.episodes[i];
    CHECK(e.index == static_cast<int>(i));
    if (e.kind == EpisodeKind::State) state_successes += e.success;
    if (e.kind == EpisodeKind::Spatial) spatial_successes += e.success;
    if (e.pov_index >= 0) {
      REQUIRE(e.pov_index < static_cast<int>(res.atlas.povs.size()));
      CHECK(res.atlas.grid_index[static_cast<std::size_t>(e.pov_index)] == e.node);
    }
  }
  CHECK(state_successes == 0);
  CHECK(spatial_successes > 0);

  // the lattice of this little grid is fully inside the annulus: the compensated
  // tip poses must reproduce the object displacements exactly (a rigid copy)
  const Pose pose0 = forward_pose(kM0);
  for (std::size_t i = 0; i < res.atlas.povs.size(); ++i) {
    Eigen::Vector2d expected =
        doubled_grid_position(grid, res.atlas.grid_index[i]) - grid.center;
    CHECK(std::hypot(res.atlas.povs[i].pose_tag.x - pose0.x - expected.x(),
                     res.atlas.povs[i].pose_tag.y - pose0.y - expected.y()) < 1e-3);
    CHECK(std::abs(wrap_angle(res.atlas.povs[i].pose_tag.alpha - pose0.alpha)) < 1e-3);
  }

  // deterministic end to end
  Rng sched_rng2(6);
  auto schedule2 = exploration_schedule(sched_rng2, grid, 0.3, 8, 1.5);
  ExploreResult res2 = explore(retina, object, schedule2, kM0, params);
  REQUIRE(res2.atlas.povs.size() == res.atlas.povs.size());
  for (std::size_t i = 0; i < res.atlas.povs.size(); ++i)
    CHECK(res2.atlas.povs[i].seed == res.atlas.povs[i].seed);
}
