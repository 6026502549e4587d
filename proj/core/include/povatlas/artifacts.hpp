#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "povatlas/compensation.hpp"
#include "povatlas/optics.hpp"
#include "povatlas/reaching.hpp"

namespace povatlas::artifacts {

// run-directory file names
inline constexpr const char* kConfig = "config.json";
inline constexpr const char* kMeta = "meta.json";
inline constexpr const char* kSummary = "summary.json";
inline constexpr const char* kAtlas = "atlas.json";
inline constexpr const char* kEpisodes = "episodes.csv";
inline constexpr const char* kPoseTags = "pose_tags.csv";
inline constexpr const char* kDistancesRaw = "distances_raw.csv";
inline constexpr const char* kTrajectories = "trajectories.csv";
std::string embedding_file(int dim, bool regularized);
std::string regularized_distances_file(int dim);

// shortest round-trip decimal representation (deterministic across runs)
std::string format_double(double v);

struct AtlasRecord {
  SpatialAtlas atlas;
  Retina retina;                        // kept for reproducibility checks
  std::vector<Eigen::Vector2d> object_offsets;
  std::uint64_t config_hash = 0;
};

void write_atlas(const std::filesystem::path& dir, const AtlasRecord& record);
AtlasRecord read_atlas(const std::filesystem::path& dir);  // MissingArtifact / CorruptArtifact

void write_episodes(const std::filesystem::path& dir, const std::vector<EpisodeRecord>& episodes);
std::vector<EpisodeRecord> read_episodes(const std::filesystem::path& dir);

void write_pose_tags(const std::filesystem::path& dir, const SpatialAtlas& atlas);

// first line n, then the upper-triangle rows
void write_distances(const std::filesystem::path& path, const Eigen::MatrixXd& D);
Eigen::MatrixXd read_distances(const std::filesystem::path& path);

// columns: index, coordinates, doubled grid index, pose tag
void write_embedding(const std::filesystem::path& path, const Eigen::MatrixXd& E,
                     const SpatialAtlas& atlas);
Eigen::MatrixXd read_embedding(const std::filesystem::path& path);

void write_trajectories(const std::filesystem::path& dir, const StraightnessReport& report);

}  // namespace povatlas::artifacts
