#include "povatlas/reaching.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "povatlas/errors.hpp"
#include "povatlas/rng.hpp"

namespace povatlas {

namespace {

// squared distance from the origin to segment ab
double segment_origin_dist_sq(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  Eigen::Vector2d ab = b - a;
  double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? -a.dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab).squaredNorm();
}

}  // namespace

PovGraph build_graph(const Eigen::MatrixXd& D, double threshold) {
  PovGraph g;
  g.n = static_cast<int>(D.rows());
  g.prune_threshold = threshold;
  g.adjacency.resize(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      double d = D(i, j);
      if (d > 0.0 && d <= threshold) {
        g.adjacency[i].emplace_back(j, d);
        g.adjacency[j].emplace_back(i, d);
      }
    }
  for (const auto& adj : g.adjacency)
    g.max_degree = std::max(g.max_degree, static_cast<int>(adj.size()));
  return g;
}

PathResult shortest_path(const PovGraph& g, int s, int t) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(g.n), kInf);
  std::vector<int> prev(static_cast<std::size_t>(g.n), -1);
  std::vector<bool> done(static_cast<std::size_t>(g.n), false);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  dist[s] = 0.0;
  heap.emplace(0.0, s);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == t) break;
    for (auto [v, w] : g.adjacency[u]) {
      double nd = d + w;
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
  if (dist[t] == kInf) throw Unreachable("nodes lie in different graph components");

  PathResult r;
  r.length = dist[t];
  for (int u = t; u != -1; u = prev[u]) r.nodes.push_back(u);
  std::reverse(r.nodes.begin(), r.nodes.end());
  return r;
}

Trajectory motor_path(const SpatialAtlas& atlas, const Eigen::MatrixXd& D,
                      const std::vector<int>& node_path, const Motor& m_start) {
  Trajectory traj;
  traj.node_path = node_path;
  traj.motor_path.push_back(m_start);
  for (std::size_t p = 1; p < node_path.size(); ++p) {
    const auto& members = atlas.povs[static_cast<std::size_t>(node_path[p])].members;
    const Motor& prev = traj.motor_path.back();
    std::size_t arg = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < members.size(); ++k) {
      double d = motor_distance(members[k], prev);
      if (d < best) {
        best = d;
        arg = k;
      }
    }
    traj.motor_path.push_back(members[arg]);
    traj.internal_length += D(node_path[p - 1], node_path[p]);
  }
  traj.pose_path.reserve(traj.motor_path.size());
  for (const Motor& m : traj.motor_path) traj.pose_path.push_back(forward_pose(m));
  for (std::size_t p = 1; p < traj.pose_path.size(); ++p)
    traj.external_length += std::hypot(traj.pose_path[p].x - traj.pose_path[p - 1].x,
                                       traj.pose_path[p].y - traj.pose_path[p - 1].y);
  return traj;
}

double reference_geodesic(const std::vector<Eigen::Vector2d>& positions, int s, int t,
                          double hole_radius) {
  // dense Dijkstra over the complete hole-avoiding graph
  int n = static_cast<int>(positions.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double hole_sq = hole_radius * hole_radius;
  std::vector<double> dist(static_cast<std::size_t>(n), kInf);
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  dist[s] = 0.0;
  for (int round = 0; round < n; ++round) {
    int u = -1;
    double best = kInf;
    for (int i = 0; i < n; ++i)
      if (!done[i] && dist[i] < best) {
        best = dist[i];
        u = i;
      }
    if (u == -1) break;
    done[u] = true;
    if (u == t) return dist[t];
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (segment_origin_dist_sq(positions[u], positions[v]) < hole_sq) continue;
      double nd = dist[u] + (positions[u] - positions[v]).norm();
      if (nd < dist[v]) dist[v] = nd;
    }
  }
  if (dist[t] == kInf) throw Unreachable("reference geodesic does not exist");
  return dist[t];
}

StraightnessReport straightness_report(const SpatialAtlas& atlas,
                                       const Eigen::MatrixXd& D_pre,
                                       const Eigen::MatrixXd& D_post, double prune,
                                       int n_pairs, double min_separation,
                                       std::uint64_t seed) {
  StraightnessReport rep;
  PovGraph g_pre = build_graph(D_pre, prune);
  PovGraph g_post = build_graph(D_post, prune);
  rep.pre_max_degree = g_pre.max_degree;
  rep.post_max_degree = g_post.max_degree;

  int n = static_cast<int>(atlas.povs.size());
  std::vector<Eigen::Vector2d> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    pos[i] = {atlas.povs[i].pose_tag.x, atlas.povs[i].pose_tag.y};

  Rng rng(seed);
  int attempts = 0;
  int max_attempts = 200 * std::max(n_pairs, 1);
  while (static_cast<int>(rep.pairs.size()) < n_pairs && attempts < max_attempts) {
    ++attempts;
    if (n < 2) break;
    int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (s == t || (pos[s] - pos[t]).norm() < min_separation) continue;
    try {
      PathResult p_pre = shortest_path(g_pre, s, t);
      PathResult p_post = shortest_path(g_post, s, t);
      double ref = reference_geodesic(pos, s, t);
      if (ref <= 0.0) continue;
      Trajectory t_pre = motor_path(atlas, D_pre, p_pre.nodes, atlas.povs[s].seed);
      Trajectory t_post = motor_path(atlas, D_post, p_post.nodes, atlas.povs[s].seed);
      rep.pairs.push_back({s, t});
      rep.pre_ratios.push_back(t_pre.external_length / ref);
      rep.post_ratios.push_back(t_post.external_length / ref);
      rep.pre_trajectories.push_back(std::move(t_pre));
      rep.post_trajectories.push_back(std::move(t_post));
    } catch (const Unreachable&) {
      continue;  // redraw; the pruned graph may be disconnected
    }
  }
  for (double r : rep.pre_ratios) rep.pre_mean += r;
  for (double r : rep.post_ratios) rep.post_mean += r;
  if (!rep.pairs.empty()) {
    rep.pre_mean /= static_cast<double>(rep.pairs.size());
    rep.post_mean /= static_cast<double>(rep.pairs.size());
  }
  return rep;
}

}  // namespace povatlas
