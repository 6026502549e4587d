#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "povatlas/errors.hpp"
#include "povatlas/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace povatlas;

namespace {

struct Args {
  std::string config_path;
  std::string out = "run";
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_n;
  int workers = 0;
  std::vector<int> dims;
  std::vector<std::string> stage_names;
  std::vector<std::string> which;
};

// precedence: command line > config file > built-in defaults; a run directory
// that already has a config.json supplies the file level when --config is absent
ExperimentConfig resolve_config(const Args& args) {
  ExperimentConfig config;
  if (!args.config_path.empty()) {
    config = load_config(args.config_path);
  } else if (fs::exists(fs::path(args.out) / "config.json")) {
    config = load_config(fs::path(args.out) / "config.json");
  }
  if (args.seed) config.seed = *args.seed;
  if (args.grid_n) config.grid.n = *args.grid_n;
  validate_config(config);
  return config;
}

void add_common(CLI::App* cmd, Args& args) {
  cmd->add_option("--config", args.config_path, "JSON configuration file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out, "run directory for artifacts")->capture_default_str();
  cmd->add_option("--seed", args.seed, "override the experiment seed");
  cmd->add_option("--grid-n", args.grid_n, "override the lattice side length (nodes)");
}

void print_stage_lines(const fs::path& dir, const std::set<Stage>& stages) {
  json summary;
  try {
    std::ifstream in(dir / "summary.json");
    in >> summary;
  } catch (...) {
    return;
  }
  if (stages.count(Stage::Explore) && summary.contains("explore")) {
    const auto& s = summary["explore"];
    std::printf("explore: %lld points of view from %lld episodes (%lld state changes, %lld compensated)\n",
                summary["atlas_size"].get<long long>(), s["episodes"].get<long long>(),
                s["state_change_attempts"].get<long long>(),
                s["state_change_successes"].get<long long>());
  }
  if (stages.count(Stage::Metrics) && summary.contains("metrics")) {
    const auto& s = summary["metrics"];
    std::printf("metrics: %lld x %lld distances, max %.3f, nearest-neighbor mean %.3f\n",
                s["n"].get<long long>(), s["n"].get<long long>(),
                s["max_distance"].get<double>(), s["mean_nearest"].get<double>());
  }
  if (stages.count(Stage::Embed) && summary.contains("embed")) {
    for (const auto& [key, s] : summary["embed"].items())
      std::printf("embed %s: alignment residual %.4f\n", key.c_str(),
                  s["affine_residual"].get<double>());
  }
  if (stages.count(Stage::Regularize) && summary.contains("regularize")) {
    for (const auto& [key, s] : summary["regularize"].items())
      std::printf("regularize %s: alignment residual %.4f, final cv max %.2e\n", key.c_str(),
                  s["affine_residual"].get<double>(), s["final_cv_max"].get<double>());
  }
  if (stages.count(Stage::Reach) && summary.contains("reach")) {
    const auto& s = summary["reach"];
    std::printf("reach: mean straightness ratio %.3f raw -> %.3f regularized over %lld pairs\n",
                s["pre_mean_ratio"].get<double>(), s["post_mean_ratio"].get<double>(),
                s["pairs"].get<long long>());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensorimotor space discovery: explore, measure, embed, regularize, reach"};
  app.set_version_flag("--version", "povatlas 0.1.0");
  app.require_subcommand(1);

  Args args;

  CLI::App* c_explore = app.add_subcommand("explore", "discover the atlas of points of view");
  CLI::App* c_metrics = app.add_subcommand("metrics", "compute the internal distance matrix");
  CLI::App* c_embed = app.add_subcommand("embed", "project the metric to low dimension");
  CLI::App* c_regularize =
      app.add_subcommand("regularize", "enforce equality sets and re-embed");
  CLI::App* c_reach = app.add_subcommand("reach", "plan reaching paths and score straightness");
  CLI::App* c_run = app.add_subcommand("run", "run several stages in order");
  CLI::App* c_plot = app.add_subcommand("plot", "render SVG figures from artifacts");

  for (CLI::App* cmd : {c_explore, c_metrics, c_embed, c_regularize, c_reach, c_run})
    add_common(cmd, args);

  for (CLI::App* cmd : {c_metrics, c_run})
    cmd->add_option("--workers", args.workers, "worker threads (0: hardware)");
  for (CLI::App* cmd : {c_embed, c_regularize, c_run})
    cmd->add_option("--dim", args.dims, "embedding dimensions (default: 2 3)");
  c_run->add_option("--stages", args.stage_names,
                    "subset of explore,metrics,embed,regularize,reach (default: all)")
      ->delimiter(',');

  c_plot->add_option("--out", args.out, "run directory holding the artifacts")
      ->capture_default_str();
  c_plot->add_option("--which", args.which,
                     "subset of working-space,embeddings,trajectories,metric-scatter")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_plot->parsed()) {
      emit_plots(args.out, std::set<std::string>(args.which.begin(), args.which.end()));
      std::printf("plots written to %s\n", args.out.c_str());
      return 0;
    }

    std::set<Stage> stages;
    if (c_explore->parsed()) stages = {Stage::Explore};
    if (c_metrics->parsed()) stages = {Stage::Metrics};
    if (c_embed->parsed()) stages = {Stage::Embed};
    if (c_regularize->parsed()) stages = {Stage::Regularize};
    if (c_reach->parsed()) stages = {Stage::Reach};
    if (c_run->parsed()) {
      if (args.stage_names.empty()) {
        stages = all_stages();
      } else {
        for (const auto& name : args.stage_names) stages.insert(stage_from_name(name));
      }
    }

    PipelineOptions options;
    options.workers = args.workers;
    if (!args.dims.empty()) options.dims = args.dims;

    run_pipeline(resolve_config(args), args.out, stages, options);
    print_stage_lines(args.out, stages);
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "povatlas: %s\n", e.what());
    return 2;
  } catch (const MissingStage& e) {
    std::fprintf(stderr, "povatlas: %s\n", e.what());
    return 3;
  } catch (const MissingArtifact& e) {
    std::fprintf(stderr, "povatlas: %s\n", e.what());
    return 3;
  } catch (const CorruptArtifact& e) {
    std::fprintf(stderr, "povatlas: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "povatlas: %s\n", e.what());
    return 1;
  }
}
