#include "povatlas/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "povatlas/alignment.hpp"
#include "povatlas/artifacts.hpp"
#include "povatlas/cca.hpp"
#include "povatlas/errors.hpp"
#include "povatlas/metric.hpp"
#include "povatlas/reaching.hpp"
#include "povatlas/regularize.hpp"
#include "povatlas/svg.hpp"

namespace povatlas {

namespace fs = std::filesystem;
using nlohmann::json;

std::set<Stage> all_stages() {
  return {Stage::Explore, Stage::Metrics, Stage::Embed, Stage::Regularize, Stage::Reach};
}

Stage stage_from_name(const std::string& name) {
  if (name == "explore") return Stage::Explore;
  if (name == "metrics") return Stage::Metrics;
  if (name == "embed") return Stage::Embed;
  if (name == "regularize") return Stage::Regularize;
  if (name == "reach") return Stage::Reach;
  throw ConfigError("unknown stage '" + name +
                    "' (expected explore, metrics, embed, regularize or reach)");
}

namespace {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::Explore: return "explore";
    case Stage::Metrics: return "metrics";
    case Stage::Embed: return "embed";
    case Stage::Regularize: return "regularize";
    case Stage::Reach: return "reach";
  }
  return "?";
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingArtifact("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string timestamp_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const CcaParams& cca_params_for(const ExperimentConfig& config, int dim) {
  return dim == 3 ? config.cca_dim3 : config.cca_dim2;
}

std::vector<Eigen::Vector2d> tag_layout(const SpatialAtlas& atlas) {
  std::vector<Eigen::Vector2d> ref;
  ref.reserve(atlas.povs.size());
  for (const auto& p : atlas.povs) ref.emplace_back(p.pose_tag.x, p.pose_tag.y);
  return ref;
}

}  // namespace

void run_pipeline(const ExperimentConfig& config, const fs::path& dir,
                  const std::set<Stage>& stages, const PipelineOptions& options) {
  validate_config(config);
  fs::create_directories(dir);

  const std::uint64_t hash = config_hash(config);
  const fs::path config_path = dir / artifacts::kConfig;
  if (fs::exists(config_path)) {
    if (config_hash(load_config(config_path)) != hash)
      throw CorruptArtifact("run directory " + dir.string() +
                            " holds artifacts of a different configuration");
  } else {
    save_config(config, config_path);
  }

  json summary = json::object();
  if (fs::exists(dir / artifacts::kSummary)) {
    try {
      summary = json::parse(slurp(dir / artifacts::kSummary));
    } catch (const json::exception& e) {
      throw CorruptArtifact(std::string("summary.json is not valid JSON: ") + e.what());
    }
  }
  summary["config_hash"] = hex64(hash);

  // Artifacts produced (or loaded) during this invocation, so chained stages
  // do not round-trip through disk.
  std::optional<artifacts::AtlasRecord> atlas;
  std::optional<Eigen::MatrixXd> d_raw;
  std::map<int, Eigen::MatrixXd> d_reg;

  auto need_atlas = [&]() -> const artifacts::AtlasRecord& {
    if (!atlas) {
      if (!fs::exists(dir / artifacts::kAtlas))
        throw MissingStage("explore stage has not run in " + dir.string());
      atlas = artifacts::read_atlas(dir);
      if (atlas->config_hash != hash)
        throw CorruptArtifact("atlas.json holds artifacts of a different configuration");
    }
    return *atlas;
  };
  auto need_d_raw = [&]() -> const Eigen::MatrixXd& {
    if (!d_raw) {
      const fs::path p = dir / artifacts::kDistancesRaw;
      if (!fs::exists(p)) throw MissingStage("metrics stage has not run in " + dir.string());
      d_raw = artifacts::read_distances(p);
    }
    return *d_raw;
  };
  auto need_d_reg = [&](int dim) -> const Eigen::MatrixXd& {
    auto it = d_reg.find(dim);
    if (it == d_reg.end()) {
      const fs::path p = dir / artifacts::regularized_distances_file(dim);
      if (!fs::exists(p))
        throw MissingStage("regularize stage (dim " + std::to_string(dim) +
                           ") has not run in " + dir.string());
      it = d_reg.emplace(dim, artifacts::read_distances(p)).first;
    }
    return it->second;
  };

  json durations = json::object();
  auto timed = [&](Stage s, auto&& body) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    durations[stage_name(s)] = dt.count();
  };

  if (stages.count(Stage::Explore)) timed(Stage::Explore, [&] {
    Rng seeder(config.seed);
    Rng retina_rng = seeder.fork("retina");
    Retina retina = make_retina(retina_rng, config.retina.receptors);

    Rng object_rng = seeder.fork("object");
    ObjectState obj = init_object(object_rng, config.object.sources, config.object.offset_radius);
    obj.center = config.grid.center;

    Rng sched_rng = seeder.fork("schedule");
    auto schedule = exploration_schedule(sched_rng, config.grid, config.state_change_prob,
                                         config.object.sources, config.object.offset_radius);

    ExploreParams params;
    params.grid = config.grid;
    params.pov = config.pov;
    params.compensation = config.compensation;
    params.seed = seeder.fork("simplex").seed();

    ExploreResult result = explore(retina, obj, schedule, config.m0, params);

    artifacts::AtlasRecord record{result.atlas, retina, obj.offsets, hash};
    artifacts::write_atlas(dir, record);
    artifacts::write_episodes(dir, result.episodes);
    artifacts::write_pose_tags(dir, result.atlas);

    int spatial_attempts = 0, spatial_successes = 0;
    int state_attempts = 0, state_successes = 0;
    for (const auto& e : result.episodes) {
      if (e.kind == EpisodeKind::Spatial) {
        ++spatial_attempts;
        spatial_successes += e.success;
      } else {
        ++state_attempts;
        state_successes += e.success;
      }
    }
    double max_spread = 0.0;
    for (const auto& p : result.atlas.povs) max_spread = std::max(max_spread, pov_pose_spread(p));

    json sec;
    sec["atlas_size"] = result.atlas.povs.size();
    sec["episodes"] = result.episodes.size();
    sec["spatial_attempts"] = spatial_attempts;
    sec["spatial_successes"] = spatial_successes;
    sec["state_change_attempts"] = state_attempts;
    sec["state_change_successes"] = state_successes;
    sec["max_pose_spread"] = max_spread;
    summary["explore"] = sec;
    summary["atlas_size"] = result.atlas.povs.size();

    atlas = std::move(record);
    d_raw.reset();
    d_reg.clear();
  });

  if (stages.count(Stage::Metrics)) timed(Stage::Metrics, [&] {
    const auto& rec = need_atlas();
    Eigen::MatrixXd D = pairwise_distances(rec.atlas, options.workers);
    artifacts::write_distances(dir / artifacts::kDistancesRaw, D);

    const Eigen::Index n = D.rows();
    double dmax = 0.0, dsum = 0.0, nearest_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        nearest = std::min(nearest, D(i, j));
        if (j > i) {
          dmax = std::max(dmax, D(i, j));
          dsum += D(i, j);
        }
      }
      nearest_sum += n > 1 ? nearest : 0.0;
    }
    json sec;
    sec["n"] = n;
    sec["max_distance"] = dmax;
    sec["mean_distance"] = n > 1 ? dsum / (static_cast<double>(n) * (n - 1) / 2.0) : 0.0;
    sec["mean_nearest"] = n > 0 ? nearest_sum / static_cast<double>(n) : 0.0;
    summary["metrics"] = sec;

    d_raw = std::move(D);
  });

  if (stages.count(Stage::Embed)) timed(Stage::Embed, [&] {
    const auto& rec = need_atlas();
    const Eigen::MatrixXd& D = need_d_raw();
    const auto reference = tag_layout(rec.atlas);
    for (int dim : options.dims) {
      CcaResult r = cca_fit(D, dim, cca_params_for(config, dim));
      artifacts::write_embedding(dir / artifacts::embedding_file(dim, false), r.embedding,
                                 rec.atlas);
      json sec;
      sec["affine_residual"] = affine_alignment_residual(r.embedding, reference);
      sec["stress_first"] = r.stress.front();
      sec["stress_last"] = r.stress.back();
      summary["embed"]["dim" + std::to_string(dim)] = sec;
    }
  });

  if (stages.count(Stage::Regularize)) timed(Stage::Regularize, [&] {
    const auto& rec = need_atlas();
    const Eigen::MatrixXd& D = need_d_raw();
    const EqualitySets sets = equality_sets(rec.atlas);
    const auto reference = tag_layout(rec.atlas);

    std::size_t pairs_total = 0;
    for (const auto& [key, members] : sets.groups) pairs_total += members.size();

    for (int dim : options.dims) {
      RegularizeResult rr = regularize_metric(D, sets, dim, cca_params_for(config, dim),
                                              config.regularization_iters);
      artifacts::write_distances(dir / artifacts::regularized_distances_file(dim), rr.D);
      artifacts::write_embedding(dir / artifacts::embedding_file(dim, true), rr.embedding,
                                 rec.atlas);

      std::vector<double> final_cvs = group_cvs(rr.D, sets);
      double cv_max = 0.0, cv_sum = 0.0;
      for (double c : final_cvs) {
        cv_max = std::max(cv_max, c);
        cv_sum += c;
      }

      json rounds = json::array();
      for (const auto& r : rr.rounds) rounds.push_back({{"cv_mean", r.cv_mean}, {"cv_max", r.cv_max}});

      json sec;
      sec["affine_residual"] = affine_alignment_residual(rr.embedding, reference);
      sec["groups"] = sets.groups.size();
      sec["groups_multi"] = final_cvs.size();
      sec["pairs"] = pairs_total;
      sec["rounds"] = rounds;
      sec["final_cv_max"] = cv_max;
      sec["final_cv_mean"] = final_cvs.empty() ? 0.0 : cv_sum / static_cast<double>(final_cvs.size());
      summary["regularize"]["dim" + std::to_string(dim)] = sec;

      d_reg[dim] = std::move(rr.D);
    }
  });

  if (stages.count(Stage::Reach)) timed(Stage::Reach, [&] {
    const auto& rec = need_atlas();
    const Eigen::MatrixXd& D = need_d_raw();
    const Eigen::MatrixXd& Dr = need_d_reg(2);

    const std::uint64_t seed = Rng(config.seed).fork("reach").seed();
    StraightnessReport rep =
        straightness_report(rec.atlas, D, Dr, config.reaching.prune, config.reaching.pairs,
                            config.reaching.min_separation, seed);
    artifacts::write_trajectories(dir, rep);

    json sec;
    sec["pairs"] = rep.pairs.size();
    sec["pre_mean_ratio"] = rep.pre_mean;
    sec["post_mean_ratio"] = rep.post_mean;
    sec["pre_max_degree"] = rep.pre_max_degree;
    sec["post_max_degree"] = rep.post_max_degree;
    sec["pre_ratios"] = rep.pre_ratios;
    sec["post_ratios"] = rep.post_ratios;
    summary["reach"] = sec;
  });

  spit(dir / artifacts::kSummary, summary.dump(2) + "\n");

  json meta;
  meta["generated_at"] = timestamp_utc();
  meta["stage_seconds"] = durations;
  spit(dir / artifacts::kMeta, meta.dump(2) + "\n");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

void plot_working_space(const fs::path& dir, const ExperimentConfig& config) {
  auto episodes = artifacts::read_episodes(dir);
  const GridConfig& grid = config.grid;
  const Pose pose0 = forward_pose(config.m0);
  const Eigen::Vector2d hole_center =
      grid.center - Eigen::Vector2d(pose0.x, pose0.y);  // object centers with the tip at the base

  const double half = grid.extent / 2.0 + 1.0;
  SvgPlot plot(grid.center.x() - half, grid.center.y() - half, grid.center.x() + half,
               grid.center.y() + half, 720, "compensable object displacements");
  plot.circle(hole_center.x(), hole_center.y(), 1.0, "#999", true);
  plot.circle(hole_center.x(), hole_center.y(), 3.0, "#999", true);
  for (const auto& e : episodes) {
    const Eigen::Vector2d p = doubled_grid_position(grid, e.node);
    if (e.kind == EpisodeKind::Spatial) {
      if (e.success)
        plot.dot(p.x(), p.y(), 2.5, "#2a7d4f");
      else
        plot.cross(p.x(), p.y(), 3.0, "#c0392b");
    } else {
      if (e.success)
        plot.dot(p.x(), p.y(), 2.5, "#e67e22");
      else
        plot.cross(p.x(), p.y(), 2.0, "#e6b422");
    }
  }
  plot.legend({{"#2a7d4f", "displacement compensated"},
               {"#c0392b", "displacement failed"},
               {"#e6b422", "state change rejected"},
               {"#999", "tip annulus (r = 1, 3)"}});
  plot.save(dir / "working_space.svg");
}

void plot_embeddings(const fs::path& dir) {
  const auto rec = artifacts::read_atlas(dir);

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : rec.atlas.povs) mean += Eigen::Vector2d(p.pose_tag.x, p.pose_tag.y);
  if (!rec.atlas.povs.empty()) mean /= static_cast<double>(rec.atlas.povs.size());

  bool any = false;
  for (int dim : {2, 3}) {
    for (bool reg : {false, true}) {
      const std::string stem = artifacts::embedding_file(dim, reg);
      const fs::path src = dir / stem;
      if (!fs::exists(src)) continue;
      any = true;
      Eigen::MatrixXd E = artifacts::read_embedding(src);
      if (E.rows() != static_cast<Eigen::Index>(rec.atlas.povs.size()))
        throw CorruptArtifact(stem + " does not match the atlas size");
      double lo_x = E.col(0).minCoeff(), hi_x = E.col(0).maxCoeff();
      double lo_y = E.col(1).minCoeff(), hi_y = E.col(1).maxCoeff();
      SvgPlot plot(lo_x, lo_y, hi_x, hi_y, 640,
                   stem.substr(0, stem.find_last_of('.')) + " (hue: bearing in the plane)");
      for (Eigen::Index i = 0; i < E.rows(); ++i) {
        const auto& tag = rec.atlas.povs[static_cast<std::size_t>(i)].pose_tag;
        const double ang = std::atan2(tag.y - mean.y(), tag.x - mean.x());
        plot.dot(E(i, 0), E(i, 1), 2.5, SvgPlot::hue_color(ang / (2 * M_PI) + 0.5));
      }
      fs::path out = dir / (stem.substr(0, stem.find_last_of('.')) + ".svg");
      plot.save(out);
    }
  }
  if (!any) throw MissingArtifact("no embedding files found in " + dir.string());
}

void plot_trajectories(const fs::path& dir) {
  const fs::path src = dir / artifacts::kTrajectories;
  const std::string text = slurp(src);

  // polylines keyed by (pair, metric)
  std::map<std::pair<int, std::string>, std::vector<std::pair<double, double>>> lines;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 11) throw CorruptArtifact("trajectory row has wrong arity");
    lines[{std::stoi(f[0]), f[1]}].emplace_back(std::stod(f[8]), std::stod(f[9]));
  }

  double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
  for (const auto& [key, pts] : lines)
    for (const auto& [x, y] : pts) {
      lo_x = std::min(lo_x, x);
      hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y);
      hi_y = std::max(hi_y, y);
    }
  SvgPlot plot(lo_x, lo_y, hi_x, hi_y, 720, "reaching trajectories (tip path)");
  plot.circle(0, 0, 1.0, "#999", true);
  for (const auto& [key, pts] : lines) {
    const bool post = key.second == "post";
    plot.polyline(pts, post ? "#1f6fb5" : "#e67e22", post ? 1.8 : 1.2);
    if (!pts.empty()) {
      plot.dot(pts.front().first, pts.front().second, 2.5, "#333");
      plot.dot(pts.back().first, pts.back().second, 2.5, "#333");
    }
  }
  plot.legend({{"#e67e22", "raw metric"},
               {"#1f6fb5", "regularized metric"},
               {"#999", "hole around the base (r = 1)"}});
  plot.save(dir / "trajectories.svg");
}

void plot_metric_scatter(const fs::path& dir, const ExperimentConfig& config) {
  const auto rec = artifacts::read_atlas(dir);
  const fs::path raw_path = dir / artifacts::kDistancesRaw;
  if (!fs::exists(raw_path)) throw MissingArtifact("distances_raw.csv not found in " + dir.string());
  const Eigen::MatrixXd D = artifacts::read_distances(raw_path);

  Eigen::MatrixXd Dr;
  const fs::path reg_path = dir / artifacts::regularized_distances_file(2);
  if (fs::exists(reg_path)) Dr = artifacts::read_distances(reg_path);

  const auto layout = tag_layout(rec.atlas);
  if (static_cast<Eigen::Index>(layout.size()) != D.rows())
    throw CorruptArtifact("distance matrix does not match the atlas size");

  // a seeded 5% subsample keeps the scatter readable at full atlas sizes
  Rng rng(Rng(config.seed).fork("plot").seed());
  std::vector<std::pair<int, int>> sample;
  for (int i = 0; i < D.rows(); ++i)
    for (int j = i + 1; j < D.cols(); ++j)
      if (rng.uniform() < 0.05) sample.emplace_back(i, j);

  double hi_x = 1e-12, hi_y = 1e-12;
  for (const auto& [i, j] : sample) {
    hi_x = std::max(hi_x, (layout[static_cast<std::size_t>(i)] - layout[static_cast<std::size_t>(j)]).norm());
    hi_y = std::max(hi_y, D(i, j));
    if (Dr.size() > 0) hi_y = std::max(hi_y, Dr(i, j));
  }
  SvgPlot plot(0, 0, hi_x, hi_y, 640, "internal vs external distance");
  for (const auto& [i, j] : sample) {
    const double ext =
        (layout[static_cast<std::size_t>(i)] - layout[static_cast<std::size_t>(j)]).norm();
    plot.dot(ext, D(i, j), 1.5, "#bbb");
    if (Dr.size() > 0) plot.dot(ext, Dr(i, j), 1.5, "#1f6fb5");
  }
  plot.polyline({{0.0, 0.0}, {std::min(hi_x, hi_y), std::min(hi_x, hi_y)}}, "#999", 1.0);
  plot.legend({{"#bbb", "raw metric"},
               {"#1f6fb5", "regularized (dim 2)"},
               {"#999", "identity"}});
  plot.save(dir / "metric_scatter.svg");
}

}  // namespace

void emit_plots(const fs::path& dir, const std::set<std::string>& which) {
  const fs::path config_path = dir / artifacts::kConfig;
  if (!fs::exists(config_path))
    throw MissingArtifact("config.json not found in " + dir.string());
  const ExperimentConfig config = load_config(config_path);

  const bool all = which.empty();
  for (const auto& name : which)
    if (name != "working-space" && name != "embeddings" && name != "trajectories" &&
        name != "metric-scatter")
      throw ConfigError("unknown plot '" + name + "'");

  if (all || which.count("working-space")) plot_working_space(dir, config);
  if (all || which.count("embeddings")) plot_embeddings(dir);
  if (all || which.count("trajectories")) plot_trajectories(dir);
  if (all || which.count("metric-scatter")) plot_metric_scatter(dir, config);
}

}  // namespace povatlas
