#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "povatlas/compensation.hpp"

namespace povatlas {

struct PovGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adjacency;  // sorted by neighbor
  double prune_threshold = 0.72;
  int max_degree = 0;
};

// Keep edges with 0 < D(i,j) <= threshold. max_degree is recorded so callers
// can warn when it exceeds the intended ~50-neighbor calibration.
PovGraph build_graph(const Eigen::MatrixXd& D, double threshold = 0.72);

struct PathResult {
  std::vector<int> nodes;
  double length = 0.0;
};

// Dijkstra with deterministic tie-breaking (smaller node index first).
// Throws Unreachable when no path exists.
PathResult shortest_path(const PovGraph& g, int s, int t);

struct Trajectory {
  std::vector<int> node_path;
  std::vector<Motor> motor_path;
  std::vector<Pose> pose_path;
  double internal_length = 0.0;
  double external_length = 0.0;
};

// Concretize a node path into motor states: each step picks the member of the
// next POV closest (torus metric) to the previous motor state, first minimal
// index on ties.
Trajectory motor_path(const SpatialAtlas& atlas, const Eigen::MatrixXd& D,
                      const std::vector<int>& node_path, const Motor& m_start);

// Shortest external polyline between two atlas nodes whose vertices are atlas
// tip positions and whose segments stay clear of the central disk of
// hole_radius: the "as straight as the node set allows" reference.
double reference_geodesic(const std::vector<Eigen::Vector2d>& positions, int s, int t,
                          double hole_radius = 1.0);

struct StraightnessReport {
  std::vector<std::array<int, 2>> pairs;
  std::vector<double> pre_ratios;   // external length / reference geodesic
  std::vector<double> post_ratios;
  double pre_mean = 0.0;
  double post_mean = 0.0;
  int pre_max_degree = 0;
  int post_max_degree = 0;
  std::vector<Trajectory> pre_trajectories;
  std::vector<Trajectory> post_trajectories;
};

// Draw seeded (s, t) pairs at least min_separation apart externally and
// reachable under both metrics, then compare how straight the external paths
// are before and after metric regularization.
StraightnessReport straightness_report(const SpatialAtlas& atlas,
                                       const Eigen::MatrixXd& D_pre,
                                       const Eigen::MatrixXd& D_post, double prune,
                                       int n_pairs, double min_separation,
                                       std::uint64_t seed);

}  // namespace povatlas
