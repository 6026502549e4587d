#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "povatlas/artifacts.hpp"
#include "povatlas/errors.hpp"
#include "povatlas/pipeline.hpp"

using namespace povatlas;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("povatlas_pipe_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

// small but structurally complete experiment: a dense little lattice inside
// the reachable annulus
ExperimentConfig small_config() {
  ExperimentConfig c;
  c.grid.n = 5;
  c.grid.extent = 2.0;
  c.seed = 3;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("a full run writes every artifact and is reproducible byte for byte") {
  TempDir a("a"), b("b");
  run_pipeline(small_config(), a.path, all_stages());

  for (const char* name :
       {"config.json", "summary.json", "meta.json", "atlas.json", "episodes.csv",
        "pose_tags.csv", "distances_raw.csv", "distances_regularized_dim2.csv",
        "distances_regularized_dim3.csv", "embedding_pre_dim2.csv", "embedding_post_dim2.csv",
        "embedding_pre_dim3.csv", "embedding_post_dim3.csv", "trajectories.csv"})
    CHECK_MESSAGE(fs::exists(a.path / name), name);

  run_pipeline(small_config(), b.path, all_stages());
  CHECK(slurp(a.path / "summary.json") == slurp(b.path / "summary.json"));
  CHECK(slurp(a.path / "atlas.json") == slurp(b.path / "atlas.json"));
  CHECK(slurp(a.path / "distances_raw.csv") == slurp(b.path / "distances_raw.csv"));
  CHECK(slurp(a.path / "embedding_post_dim2.csv") == slurp(b.path / "embedding_post_dim2.csv"));
  CHECK(slurp(a.path / "trajectories.csv") == slurp(b.path / "trajectories.csv"));

  // a different seed must actually change the run
  ExperimentConfig other = small_config();
  other.seed = 4;
  TempDir c("c");
  run_pipeline(other, c.path, all_stages());
  CHECK(slurp(a.path / "summary.json") != slurp(c.path / "summary.json"));
}

TEST_CASE("stages compose across invocations") {
  TempDir dir("stages");
  ExperimentConfig c = small_config();
  run_pipeline(c, dir.path, {Stage::Explore});
  CHECK(fs::exists(dir.path / "atlas.json"));
  CHECK_FALSE(fs::exists(dir.path / "distances_raw.csv"));

  run_pipeline(c, dir.path, {Stage::Metrics});
  CHECK(fs::exists(dir.path / "distances_raw.csv"));

  run_pipeline(c, dir.path, {Stage::Embed});
  run_pipeline(c, dir.path, {Stage::Regularize});
  run_pipeline(c, dir.path, {Stage::Reach});
  CHECK(fs::exists(dir.path / "trajectories.csv"));

  // the summary accumulates all sections
  std::string s = slurp(dir.path / "summary.json");
  for (const char* key : {"explore", "metrics", "embed", "regularize", "reach"})
    CHECK_MESSAGE(s.find('"' + std::string(key) + '"') != std::string::npos, key);
}

TEST_CASE("missing prerequisites are reported as missing stages") {
  TempDir dir("missing");
  CHECK_THROWS_AS(run_pipeline(small_config(), dir.path, {Stage::Metrics}), MissingStage);
  CHECK_THROWS_AS(run_pipeline(small_config(), dir.path, {Stage::Embed}), MissingStage);
  CHECK_THROWS_AS(run_pipeline(small_config(), dir.path, {Stage::Reach}), MissingStage);
}

TEST_CASE("a run directory rejects a different configuration") {
  TempDir dir("clash");
  run_pipeline(small_config(), dir.path, {Stage::Explore});
  ExperimentConfig other = small_config();
  other.seed = 1234;
  CHECK_THROWS_AS(run_pipeline(other, dir.path, {Stage::Metrics}), CorruptArtifact);
}

TEST_CASE("invalid configurations are rejected up front") {
  TempDir dir("invalid");
  ExperimentConfig c = small_config();
  c.grid.n = 0;
  CHECK_THROWS_AS(run_pipeline(c, dir.path, all_stages()), ConfigError);
  CHECK_FALSE(fs::exists(dir.path / "config.json"));
}

TEST_CASE("stage names parse") {
  CHECK(stage_from_name("explore") == Stage::Explore);
  CHECK(stage_from_name("reach") == Stage::Reach);
  CHECK_THROWS_AS(stage_from_name("exploring"), ConfigError);
}

TEST_CASE("plots are emitted for complete runs") {
  TempDir dir("plots");
  run_pipeline(small_config(), dir.path, all_stages());
  emit_plots(dir.path, {});
  for (const char* name : {"working_space.svg", "embedding_pre_dim2.svg",
                           "embedding_post_dim2.svg", "trajectories.svg", "metric_scatter.svg"})
    CHECK_MESSAGE(fs::exists(dir.path / name), name);

  // selective emission
  fs::remove(dir.path / "working_space.svg");
  emit_plots(dir.path, {"working-space"});
  CHECK(fs::exists(dir.path / "working_space.svg"));

  CHECK_THROWS_AS(emit_plots(dir.path, {"no-such-plot"}), ConfigError);

  TempDir empty("noplots");
  fs::create_directories(empty.path);
  CHECK_THROWS_AS(emit_plots(empty.path, {}), MissingArtifact);
}

TEST_CASE("the summary carries the statistics the experiment is judged by") {
  TempDir dir("stats");
  run_pipeline(small_config(), dir.path, all_stages());
  std::string s = slurp(dir.path / "summary.json");
  for (const char* key :
       {"atlas_size", "state_change_successes", "max_pose_spread", "affine_residual",
        "final_cv_max", "pre_mean_ratio", "post_mean_ratio", "config_hash"})
    CHECK_MESSAGE(s.find(key) != std::string::npos, key);
}
