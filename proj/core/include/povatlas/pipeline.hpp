#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "povatlas/config.hpp"

namespace povatlas {

enum class Stage { Explore, Metrics, Embed, Regularize, Reach };

std::set<Stage> all_stages();
Stage stage_from_name(const std::string& name);  // throws ConfigError

struct PipelineOptions {
  int workers = 0;              // <= 0: hardware concurrency
  std::vector<int> dims = {2, 3};
};

// Run the selected stages against a run directory, reusing artifacts of
// stages that already ran. Stage outputs and summary.json depend only on the
// configuration (timestamps live in meta.json). Throws MissingStage when a
// prerequisite is neither on disk nor part of this invocation, and
// CorruptArtifact when the directory holds artifacts of another config.
void run_pipeline(const ExperimentConfig& config, const std::filesystem::path& dir,
                  const std::set<Stage>& stages, const PipelineOptions& options = {});

// which: subset of {"working-space", "embeddings", "trajectories", "metric-scatter"}
void emit_plots(const std::filesystem::path& dir, const std::set<std::string>& which);

}  // namespace povatlas
