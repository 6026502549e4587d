#pragma once

#include <vector>

#include <Eigen/Dense>

namespace povatlas {

// How far the embedding is from an affine copy of the reference layout:
// fit a least-squares affine map (2-D embeddings) or a similarity plus
// orthogonal projection (3-D embeddings) onto the 2-D reference and return
// the RMS residual divided by the reference diameter.
double affine_alignment_residual(const Eigen::MatrixXd& E,
                                 const std::vector<Eigen::Vector2d>& reference);

}  // namespace povatlas
