#include "povatlas/regularize.hpp"

#include <cmath>

namespace povatlas {

EqualitySets equality_sets(const SpatialAtlas& atlas) {
  EqualitySets sets;
  int n = static_cast<int>(atlas.povs.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Eigen::Vector2i d = atlas.grid_index[j] - atlas.grid_index[i];
      if (d.x() < 0 || (d.x() == 0 && d.y() < 0)) d = -d;
      sets.groups[{d.x(), d.y()}].emplace_back(i, j);
    }
  return sets;
}

std::vector<double> group_cvs(const Eigen::MatrixXd& D, const EqualitySets& sets) {
  std::vector<double> cvs;
  for (const auto& [key, pairs] : sets.groups) {
    if (pairs.size() < 2) continue;
    double mean = 0.0;
    for (auto [i, j] : pairs) mean += D(i, j);
    mean /= pairs.size();
    double var = 0.0;
    for (auto [i, j] : pairs) {
      double d = D(i, j) - mean;
      var += d * d;
    }
    var /= pairs.size();
    cvs.push_back(mean > 0.0 ? std::sqrt(var) / mean : 0.0);
  }
  return cvs;
}

void equalize_groups(Eigen::MatrixXd& D, const EqualitySets& sets) {
  for (const auto& [key, pairs] : sets.groups) {
    double mean = 0.0;
    for (auto [i, j] : pairs) mean += D(i, j);
    mean /= pairs.size();
    for (auto [i, j] : pairs) {
      D(i, j) = mean;
      D(j, i) = mean;
    }
  }
}

RegularizeResult regularize_metric(const Eigen::MatrixXd& D0, const EqualitySets& sets,
                                   int dim, const CcaParams& params, int iters) {
  RegularizeResult res;
  res.D = D0;
  for (int it = 0; it < iters; ++it) {
    auto cvs = group_cvs(res.D, sets);
    RegularizeRound round;
    for (double cv : cvs) {
      round.cv_mean += cv;
      round.cv_max = std::max(round.cv_max, cv);
    }
    if (!cvs.empty()) round.cv_mean /= static_cast<double>(cvs.size());
    res.rounds.push_back(round);

    equalize_groups(res.D, sets);
    CcaParams p = params;
    p.seed = params.seed + static_cast<std::uint64_t>(it);
    res.embedding = cca_fit(res.D, dim, p).embedding;
    res.D = embedding_distances(res.embedding);
  }
  return res;
}

}  // namespace povatlas
