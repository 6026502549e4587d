#pragma once

#include <Eigen/Dense>

#include "povatlas/compensation.hpp"
#include "povatlas/pov.hpp"

namespace povatlas {

// Two-sided sup-inf of the torus motor metric over the member sets.
double hausdorff_distance(const PointOfView& a, const PointOfView& b);

// Symmetric matrix of hausdorff_distance over all unordered POV pairs.
// Pairs are independent and written to disjoint cells, so the result is
// identical for any worker count. workers <= 0 selects the hardware count.
Eigen::MatrixXd pairwise_distances(const SpatialAtlas& atlas, int workers = 0);

}  // namespace povatlas
