#include "povatlas/environment.hpp"

#include <cmath>
#include <numeric>

#include "povatlas/errors.hpp"

namespace povatlas {

ObjectState init_object(Rng& rng, int sources, double radius) {
  ObjectState obj;
  obj.offsets.resize(static_cast<std::size_t>(sources));
  for (auto& o : obj.offsets) {
    auto p = rng.in_disk(radius);
    o = Eigen::Vector2d(p[0], p[1]);
  }
  return obj;
}

ObjectState apply_change(const ObjectState& obj, const EnvChange& change) {
  ObjectState out = obj;
  if (const auto* s = std::get_if<SpatialChange>(&change)) {
    out.center += s->delta;
  } else {
    out.offsets = std::get<StateChange>(change).new_offsets;
  }
  return out;
}

std::vector<Eigen::Vector2d> grid_positions(const GridConfig& grid) {
  if (grid.n < 2) throw ConfigError("grid needs at least 2 nodes per side");
  double h = grid.spacing();
  Eigen::Vector2d corner = grid.center - Eigen::Vector2d(grid.extent / 2, grid.extent / 2);
  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(grid.n) * grid.n);
  for (int iy = 0; iy < grid.n; ++iy)
    for (int ix = 0; ix < grid.n; ++ix)
      out.emplace_back(corner.x() + ix * h, corner.y() + iy * h);
  return out;
}

Eigen::Vector2i grid_node_of(const GridConfig& grid, const Eigen::Vector2d& pos) {
  double h = grid.spacing();
  Eigen::Vector2d rel = pos - grid.center + Eigen::Vector2d(grid.extent / 2, grid.extent / 2);
  return {static_cast<int>(std::llround(rel.x() / h)), static_cast<int>(std::llround(rel.y() / h))};
}

Eigen::Vector2i doubled_grid_coords(const GridConfig& grid, const Eigen::Vector2d& pos) {
  double half = grid.spacing() / 2;
  Eigen::Vector2d rel = pos - grid.center;
  return {static_cast<int>(std::llround(rel.x() / half)), static_cast<int>(std::llround(rel.y() / half))};
}

Eigen::Vector2d doubled_grid_position(const GridConfig& grid, const Eigen::Vector2i& q) {
  double half = grid.spacing() / 2;
  return grid.center + Eigen::Vector2d(q.x() * half, q.y() * half);
}

std::vector<EnvChange> exploration_schedule(Rng& rng, const GridConfig& grid,
                                            double state_change_prob, int sources,
                                            double radius) {
  if (state_change_prob < 0.0 || state_change_prob >= 1.0)
    throw ConfigError("state_change_prob must be in [0, 1)");
  auto nodes = grid_positions(grid);
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  std::vector<EnvChange> schedule;
  schedule.reserve(order.size());
  Eigen::Vector2d cur = grid.center;
  for (std::size_t idx : order) {
    if (rng.uniform() < state_change_prob) {
      StateChange sc;
      sc.new_offsets.resize(static_cast<std::size_t>(sources));
      for (auto& o : sc.new_offsets) {
        auto p = rng.in_disk(radius);
        o = Eigen::Vector2d(p[0], p[1]);
      }
      schedule.emplace_back(std::move(sc));
    }
    Eigen::Vector2d delta = nodes[idx] - cur;
    cur += delta;  // same arithmetic the consumer applies
    schedule.emplace_back(SpatialChange{delta});
  }
  return schedule;
}

}  // namespace povatlas
