#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace homog::cli {

enum class ExperimentKind {
  EstimateBeta,
  Coeff1D,
  Coeff2D,
  Solution1D,
  Solution2D,
  WeightedCostStudy,
};

ExperimentKind parse_kind(const std::string& name);  // subcommand spelling
std::string kind_name(ExperimentKind kind);

/// Flat superset of every experiment's knobs; each runner consumes the
/// fields it needs and validate() knows which combinations make sense.
/// JSON keys match the field names one-to-one (schema in README).
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Coeff1D;

  // level structure (level count L is the array length)
  std::vector<double> eta;      // RVE sizes, strictly increasing
  std::vector<double> H;        // coarse mesh sizes, strictly decreasing
  std::vector<long long> m;     // RVE / coefficient samples, non-increasing
  std::vector<long long> M;     // macro realizations, non-increasing
  std::vector<long long> m_ref; // per-level reference samples (coeff-2d)

  // microstructure
  std::string family = "unit-interval";  // coeff-1d coefficient family
  double family_constant = 1.0;          // the families' constant C
  double epsilon = 0.0;                  // microscale; 0 = not used
  double sigma = 1.4142135623730951;     // field standard deviation
  double corr_len = 0.04;                // physical correlation length
  double field_mean = 10.0;              // Gaussian field mean
  double micro_h = 0.0078125;            // RVE mesh size (1/128)
  std::string bc = "dirichlet-linear";   // corrector boundary condition
  std::string tensor_form = "flux";      // apparent-tensor definition

  // estimator
  std::string coupling = "shared";  // or "independent"
  int nb = 200;                     // outer repetitions
  long long reference_M = 200;      // reference macro realizations
  long long reference_m = 20;       // reference micro samples

  // rate regression / synthetic targets
  double beta = 2.0;
  double ln_c = 0.0;
  bool synthetic = false;

  // cost study
  std::vector<double> betas{1.0, 2.0, 3.0};
  int max_levels = 15;
  int cost_dim = 2;

  // run control
  std::uint64_t base_seed = 1;
  bool base_seed_given = false;  // tracked for the seed-presence check
  int threads = 1;
  std::string out_dir = "out";
  bool dump_samples = false;
};

struct Violation {
  std::string field;
  std::string message;
  bool warning = false;
};

/// Reads and parses a JSON config file. Malformed JSON, unknown keys, or
/// wrongly typed values raise ConfigError naming the offending field.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const nlohmann::json& j);

/// Semantic checks (monotonicity, array shapes, scale separation, seed
/// presence). Returns diagnostics instead of throwing; entries with
/// warning == true do not block a run.
std::vector<Violation> validate(const ExperimentConfig& c);

/// Canonical JSON echo of the config (sorted keys), used for the manifest
/// and hashed for reproducibility tracking.
nlohmann::json config_to_json(const ExperimentConfig& c);
std::uint64_t config_hash(const ExperimentConfig& c);

/// Thread-count precedence: HOMOG_THREADS beats the --threads flag beats
/// the config file. flag_threads <= 0 means the flag was not given.
int resolve_threads(const ExperimentConfig& c, int flag_threads);

}  // namespace homog::cli
