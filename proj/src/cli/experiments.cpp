#include "homog/cli/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "homog/errors.hpp"

namespace homog::cli {

using nlohmann::json;

ArtifactWriter::ArtifactWriter(std::string dir, const ExperimentConfig& cfg)
    : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + dir_ +
                      "': " + ec.message());
  manifest_["experiment"] = kind_name(cfg.experiment);
  manifest_["config"] = config_to_json(cfg);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  manifest_["config_hash"] = hash;
  manifest_["seeds"] = {
      {"base_seed", cfg.base_seed},
      {"rep_stride", kRepStride},
      {"level_stride", kLevelStride},
      {"streams",
       {{"mlmc", kStreamMlmc},
        {"mc", kStreamMc},
        {"reference", kStreamReference},
        {"micro", kStreamMicro},
        {"micro_mc", kStreamMicroMc}}},
  };
  manifest_["versions"] = {{"library", HOMOG_VERSION},
                           {"compiler", __VERSION__}};
  derived_ = json::object();
}

void ArtifactWriter::csv(const std::string& name, const std::string& header,
                         const std::vector<std::vector<std::string>>& rows) {
  const auto path = std::filesystem::path(dir_) / name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << row[i];
    }
    out << "\n";
  }
  if (!out.flush())
    throw ConfigError("short write on '" + path.string() + "'");
  manifest_["files"].push_back(name);
}

void ArtifactWriter::script(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::path(dir_) / name;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << body;
  if (!out.flush())
    throw ConfigError("short write on '" + path.string() + "'");
  manifest_["files"].push_back(name);
}

void ArtifactWriter::finish() {
  manifest_["derived"] = derived_;
  const auto now = std::chrono::system_clock::now();
  manifest_["generated_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
          .count();
  const auto path = std::filesystem::path(dir_) / "manifest.json";
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << manifest_.dump(2) << "\n";
}

int run_experiment(const ExperimentConfig& cfg) {
  try {
    const auto violations = validate(cfg);
    bool fatal = false;
    for (const auto& v : violations) {
      std::fprintf(stderr, "%s: config.%s: %s\n",
                   v.warning ? "warning" : "error", v.field.c_str(),
                   v.message.c_str());
      fatal = fatal || !v.warning;
    }
    if (fatal) return 2;

    ArtifactWriter out(cfg.out_dir, cfg);
    switch (cfg.experiment) {
      case ExperimentKind::EstimateBeta: run_beta(cfg, out); break;
      case ExperimentKind::Coeff1D: run_coeff1d(cfg, out); break;
      case ExperimentKind::Coeff2D: run_coeff2d(cfg, out); break;
      case ExperimentKind::Solution1D: run_solution1d(cfg, out); break;
      case ExperimentKind::Solution2D: run_solution2d(cfg, out); break;
      case ExperimentKind::WeightedCostStudy: run_weighted_cost(cfg, out); break;
    }
    out.finish();
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", kind_name(cfg.experiment).c_str(),
                 e.what());
    return 3;
  }
}

}  // namespace homog::cli
