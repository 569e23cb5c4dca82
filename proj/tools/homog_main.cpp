// Command-line front end: one subcommand per experiment plus `validate`.
// Every run is driven by a JSON config; --seed / --threads / --out override
// the corresponding config fields for that invocation only.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "homog/cli/config.hpp"
#include "homog/cli/experiments.hpp"
#include "homog/errors.hpp"

namespace {

struct Cli {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;
  std::string out_dir;
};

void add_common(CLI::App* cmd, Cli& cli) {
  cmd->add_option("--config", cli.config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", cli.seed, "override base_seed");
  cmd->add_option("--threads", cli.threads,
                  "worker threads (HOMOG_THREADS takes precedence)");
  cmd->add_option("--out", cli.out_dir, "override the output directory");
}

homog::cli::ExperimentConfig load(const Cli& cli, const std::string& subcmd) {
  auto cfg = homog::cli::load_config(cli.config_path);
  const auto kind = homog::cli::parse_kind(subcmd);
  if (cfg.experiment != kind)
    throw homog::ConfigError("config.experiment: file declares '" +
                             homog::cli::kind_name(cfg.experiment) +
                             "' but the '" + subcmd +
                             "' subcommand was invoked");
  if (cli.seed_given) {
    cfg.base_seed = cli.seed;
    cfg.base_seed_given = true;
  }
  cfg.threads = homog::cli::resolve_threads(cfg, cli.threads);
  if (!cli.out_dir.empty()) cfg.out_dir = cli.out_dir;
  return cfg;
}

int run_validate(const Cli& cli) {
  const auto cfg = homog::cli::load_config(cli.config_path);
  const auto violations = homog::cli::validate(cfg);
  bool fatal = false;
  for (const auto& v : violations) {
    std::fprintf(stderr, "%s: config.%s: %s\n",
                 v.warning ? "warning" : "error", v.field.c_str(),
                 v.message.c_str());
    fatal = fatal || !v.warning;
  }
  if (fatal) return 2;
  std::printf("ok: %s (%s)\n", cli.config_path.c_str(),
              homog::cli::kind_name(cfg.experiment).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel Monte Carlo experiments for random homogenization"};
  app.require_subcommand(1);

  const char* experiment_cmds[] = {"estimate-beta", "coeff-1d", "coeff-2d",
                                   "solution-1d", "solution-2d",
                                   "weighted-cost"};
  Cli cli;
  for (const char* name : experiment_cmds)
    add_common(app.add_subcommand(name), cli);
  auto* validate_cmd =
      app.add_subcommand("validate", "check a config without running it");
  validate_cmd->add_option("--config", cli.config_path, "JSON config file")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto* sub = app.get_subcommands().front();
  try {
    if (sub == validate_cmd) return run_validate(cli);
    cli.seed_given = sub->count("--seed") > 0;
    return homog::cli::run_experiment(load(cli, sub->get_name()));
  } catch (const homog::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const homog::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
