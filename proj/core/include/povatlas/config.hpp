#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "povatlas/arm.hpp"
#include "povatlas/cca.hpp"
#include "povatlas/compensation.hpp"
#include "povatlas/environment.hpp"
#include "povatlas/pov.hpp"

namespace povatlas {

struct ArmConfig {
  int segments = 3;  // unit length each
  int joints = 4;
};

struct RetinaConfig {
  int receptors = 6;
};

struct ObjectConfig {
  int sources = 10;
  double offset_radius = 4.0;
};

struct ReachingConfig {
  double prune = 0.72;
  int pairs = 10;
  double min_separation = 2.0;
};

struct ExperimentConfig {
  std::uint64_t seed = 1;
  ArmConfig arm;
  RetinaConfig retina;
  ObjectConfig object;
  GridConfig grid;
  double state_change_prob = 0.1;
  PovParams pov;
  CompensationParams compensation;
  CcaParams cca_dim2;
  CcaParams cca_dim3;
  int regularization_iters = 10;
  ReachingConfig reaching;
  Motor m0 = Motor(0.1, -1.5, 2.2, -3.0);
};

// throws ConfigError on out-of-range or unsupported values
void validate_config(const ExperimentConfig& config);

// Canonical JSON (sorted keys). Parsing accepts partial documents (absent
// fields keep their defaults) but rejects unknown keys.
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config, const std::filesystem::path& path);

// FNV-1a of the canonical JSON; artifact headers carry it so stale artifacts
// from a different configuration are detected.
std::uint64_t config_hash(const ExperimentConfig& config);

}  // namespace povatlas
