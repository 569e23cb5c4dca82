#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "homog/cli/config.hpp"

#define HOMOG_VERSION "0.1.0"

namespace homog::cli {

// Seed layout shared by every experiment. Repetition b draws realization j
// from macro seed base_seed + b * kRepStride + j; per-level independent
// draws additionally offset by level * kLevelStride. Streams keep the MLMC
// run, its MC comparator, and reference computations decorrelated even
// where their seed ranges overlap.
inline constexpr std::uint64_t kRepStride = 1ull << 24;
inline constexpr std::uint64_t kLevelStride = 1ull << 16;
inline constexpr std::uint64_t kStreamMlmc = 101;
inline constexpr std::uint64_t kStreamMc = 102;
inline constexpr std::uint64_t kStreamReference = 103;
inline constexpr std::uint64_t kStreamMicro = 104;
inline constexpr std::uint64_t kStreamMicroMc = 105;

/// Collects an experiment's output files under one directory. CSV bodies
/// carry no timestamps or machine state, so a rerun with the same config
/// and seed reproduces them byte for byte; everything volatile goes into
/// manifest.json at finish().
class ArtifactWriter {
 public:
  ArtifactWriter(std::string dir, const ExperimentConfig& cfg);

  void csv(const std::string& name, const std::string& header,
           const std::vector<std::vector<std::string>>& rows);
  void script(const std::string& name, const std::string& body);

  /// Mutable "derived" section of the manifest (fitted constants, derived
  /// sample counts, pilot moments, summary statistics).
  nlohmann::json& derived() { return derived_; }

  void finish();
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  nlohmann::json manifest_;
  nlohmann::json derived_;
};

/// Validates, runs, writes artifacts. Returns the process exit code:
/// 0 success, 2 config error, 3 numerical failure.
int run_experiment(const ExperimentConfig& cfg);

void run_coeff1d(const ExperimentConfig& cfg, ArtifactWriter& out);
void run_coeff2d(const ExperimentConfig& cfg, ArtifactWriter& out);
void run_beta(const ExperimentConfig& cfg, ArtifactWriter& out);
void run_solution1d(const ExperimentConfig& cfg, ArtifactWriter& out);
void run_solution2d(const ExperimentConfig& cfg, ArtifactWriter& out);
void run_weighted_cost(const ExperimentConfig& cfg, ArtifactWriter& out);

}  // namespace homog::cli
