#include "povatlas/metric.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace povatlas {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double sq_motor_distance(const Motor& a, const Motor& b) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) {
    double d = a[k] - b[k];
    double w = d - kTwoPi * std::nearbyint(d / kTwoPi);
    s += w * w;
  }
  return s;
}

// sup over a of inf over b, with the classic exact early break: once some b
// comes closer than the running sup, this a cannot raise it. The scan starts
// at the previous argmin, which is almost always immediately below the sup
// because consecutive members are neighbors on their loop.
double directed_sq(const std::vector<Motor>& A, const std::vector<Motor>& B) {
  std::size_t nb = B.size();
  double sup_sq = 0.0;
  std::size_t start = 0;
  for (const Motor& a : A) {
    double min_sq = std::numeric_limits<double>::infinity();
    std::size_t argmin = start;
    bool pruned = false;
    for (std::size_t off = 0; off < nb; ++off) {
      std::size_t j = start + off;
      if (j >= nb) j -= nb;
      double d = sq_motor_distance(a, B[j]);
      if (d < sup_sq) {
        start = j;
        pruned = true;
        break;
      }
      if (d < min_sq) {
        min_sq = d;
        argmin = j;
      }
    }
    if (!pruned) {
      sup_sq = min_sq;
      start = argmin;
    }
  }
  return sup_sq;
}

}  // namespace

double hausdorff_distance(const PointOfView& a, const PointOfView& b) {
  return std::sqrt(std::max(directed_sq(a.members, b.members),
                            directed_sq(b.members, a.members)));
}

Eigen::MatrixXd pairwise_distances(const SpatialAtlas& atlas, int workers) {
  int n = static_cast<int>(atlas.povs.size());
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, std::max<std::size_t>(pairs.size(), 1));

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      auto [i, j] = pairs[k];
      double d = hausdorff_distance(atlas.povs[i], atlas.povs[j]);
      D(i, j) = d;
      D(j, i) = d;
    }
  };

  if (workers == 1) {
    work(0, pairs.size());
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      std::size_t lo = pairs.size() * t / workers;
      std::size_t hi = pairs.size() * (t + 1) / workers;
      threads.emplace_back(work, lo, hi);
    }
    for (auto& th : threads) th.join();
  }
  return D;
}

}  // namespace povatlas
