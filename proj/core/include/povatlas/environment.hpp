#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "povatlas/rng.hpp"

namespace povatlas {

// Rigid object: a cloud of point light sources at fixed offsets from a center.
struct ObjectState {
  Eigen::Vector2d center{0.0, 0.0};
  std::vector<Eigen::Vector2d> offsets;

  std::vector<Eigen::Vector2d> sources() const {
    std::vector<Eigen::Vector2d> s(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) s[i] = center + offsets[i];
    return s;
  }
};

// Rigid translation of the whole object.
struct SpatialChange {
  Eigen::Vector2d delta;
};

// Redistribution of the sources around an unmoved center.
struct StateChange {
  std::vector<Eigen::Vector2d> new_offsets;
};

using EnvChange = std::variant<SpatialChange, StateChange>;

struct GridConfig {
  int n = 62;               // nodes per side
  double extent = 12.0;     // side length of the lattice
  Eigen::Vector2d center{0.0, 0.0};

  double spacing() const { return extent / (n - 1); }
};

// center at the origin, offsets uniform in the disk of `radius`
ObjectState init_object(Rng& rng, int sources = 10, double radius = 4.0);

ObjectState apply_change(const ObjectState& obj, const EnvChange& change);

// row-major lattice (x fastest) of n^2 positions centered on grid.center
std::vector<Eigen::Vector2d> grid_positions(const GridConfig& grid);

// Nearest lattice node of a world position, or the doubled variant below.
Eigen::Vector2i grid_node_of(const GridConfig& grid, const Eigen::Vector2d& pos);

// Lattice coordinates in units of spacing/2, so that the grid center (where
// the object starts, between nodes when n is even) maps to exact integers
// (0, 0) alongside the nodes themselves.
Eigen::Vector2i doubled_grid_coords(const GridConfig& grid, const Eigen::Vector2d& pos);
Eigen::Vector2d doubled_grid_position(const GridConfig& grid, const Eigen::Vector2i& q);

// A random permutation of the lattice expressed as successive center deltas;
// before each displacement, with probability state_change_prob, a source
// redistribution is inserted. The object is assumed to start at grid.center.
std::vector<EnvChange> exploration_schedule(Rng& rng, const GridConfig& grid,
                                            double state_change_prob, int sources = 10,
                                            double radius = 4.0);

}  // namespace povatlas
