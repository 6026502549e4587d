#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "povatlas/cca.hpp"
#include "povatlas/compensation.hpp"

namespace povatlas {

// POV pairs grouped by the lattice displacement between them (key in doubled
// grid coordinates, sign-canonicalized since pairs are unordered). All pairs
// of one group realize the same external displacement, so their internal
// distances are supposed to agree.
struct EqualitySets {
  std::map<std::array<int, 2>, std::vector<std::pair<int, int>>> groups;
};

EqualitySets equality_sets(const SpatialAtlas& atlas);

// Coefficient of variation (population std / mean) per group with >= 2 pairs.
std::vector<double> group_cvs(const Eigen::MatrixXd& D, const EqualitySets& sets);

// Replace every pair distance by its group mean (in place).
void equalize_groups(Eigen::MatrixXd& D, const EqualitySets& sets);

struct RegularizeRound {
  double cv_mean = 0.0;  // over groups with >= 2 pairs, measured on entry
  double cv_max = 0.0;
};

struct RegularizeResult {
  Eigen::MatrixXd D;          // final internal metric (distances of `embedding`)
  Eigen::MatrixXd embedding;  // final projection
  std::vector<RegularizeRound> rounds;
};

// Iterate: equalize group distances, re-embed, and adopt the embedding's
// distances as the new working metric. Group means are recomputed from the
// current metric each round. The embedding seed advances by one per round.
RegularizeResult regularize_metric(const Eigen::MatrixXd& D0, const EqualitySets& sets,
                                   int dim, const CcaParams& params, int iters = 10);

}  // namespace povatlas
