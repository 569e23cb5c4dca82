// Config parsing, validation, hashing, thread resolution, and end-to-end
// experiment runs through the same entry point the binary uses. The argv
// surface itself (subcommands, exit codes) is exercised by shelling out to
// the built executable, whose path CMake injects as HOMOG_CLI_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "homog/cli/config.hpp"
#include "homog/cli/experiments.hpp"
#include "homog/errors.hpp"

namespace fs = std::filesystem;
using homog::cli::ExperimentConfig;
using homog::cli::ExperimentKind;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("homog_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

bool has_violation(const std::vector<homog::cli::Violation>& v,
                   const std::string& field, bool warning) {
  for (const auto& item : v)
    if (item.field == field && item.warning == warning) return true;
  return false;
}

bool all_warnings(const std::vector<homog::cli::Violation>& v) {
  for (const auto& item : v)
    if (!item.warning) return false;
  return true;
}

ExperimentConfig tiny_coeff1d() {
  ExperimentConfig c;
  c.experiment = ExperimentKind::Coeff1D;
  c.family = "unit-interval";
  c.family_constant = 1.0;
  c.eta = {100.0, 200.0};
  c.m = {6, 3};
  c.nb = 3;
  c.base_seed = 42;
  c.base_seed_given = true;
  c.threads = 1;
  return c;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HOMOG_CLI_BIN) + " " + args +
                          " > /dev/null 2> /dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status >= 0);
  return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << body;
}

}  // namespace

TEST_CASE("experiment kind names round-trip through the parser") {
  using homog::cli::kind_name;
  using homog::cli::parse_kind;
  const std::vector<ExperimentKind> kinds = {
      ExperimentKind::EstimateBeta, ExperimentKind::Coeff1D,
      ExperimentKind::Coeff2D,      ExperimentKind::Solution1D,
      ExperimentKind::Solution2D,   ExperimentKind::WeightedCostStudy};
  for (auto k : kinds) CHECK(parse_kind(kind_name(k)) == k);
  CHECK_THROWS_AS(parse_kind("coeff-4d"), homog::ConfigError);
}

TEST_CASE("parse_config applies defaults and keeps explicit values") {
  const json j = {{"experiment", "coeff-1d"},
                  {"eta", {100.0, 200.0}},
                  {"m", {8, 4}},
                  {"base_seed", 7}};
  const ExperimentConfig c = homog::cli::parse_config(j);
  CHECK(c.experiment == ExperimentKind::Coeff1D);
  CHECK(c.eta == std::vector<double>{100.0, 200.0});
  CHECK(c.m == std::vector<long long>{8, 4});
  CHECK(c.base_seed == 7);
  CHECK(c.base_seed_given);
  // untouched knobs keep their documented defaults
  CHECK(c.family == "unit-interval");
  CHECK(c.coupling == "shared");
  CHECK(c.nb == 200);
  CHECK(c.threads == 1);
  CHECK(c.bc == "dirichlet-linear");
  CHECK(c.tensor_form == "flux");
  CHECK_FALSE(c.synthetic);
}

TEST_CASE("config survives a json round trip unchanged") {
  ExperimentConfig c = tiny_coeff1d();
  c.epsilon = 0.0125;
  c.coupling = "independent";
  c.out_dir = "somewhere";
  const json j1 = homog::cli::config_to_json(c);
  const ExperimentConfig back = homog::cli::parse_config(j1);
  const json j2 = homog::cli::config_to_json(back);
  CHECK(j1 == j2);
}

TEST_CASE("unknown keys and type mismatches are rejected by field name") {
  json j = {{"experiment", "coeff-1d"}, {"etaa", {1.0, 2.0}}};
  CHECK_THROWS_WITH_AS(homog::cli::parse_config(j),
                       doctest::Contains("etaa"), homog::ConfigError);

  json bad_type = {{"experiment", "coeff-1d"}, {"eta", "not-an-array"}};
  CHECK_THROWS_WITH_AS(homog::cli::parse_config(bad_type),
                       doctest::Contains("eta"), homog::ConfigError);

  json bad_seed = {{"experiment", "coeff-1d"}, {"base_seed", 1.5}};
  CHECK_THROWS_WITH_AS(homog::cli::parse_config(bad_seed),
                       doctest::Contains("base_seed"), homog::ConfigError);

  json no_kind = {{"eta", {1.0, 2.0}}};
  CHECK_THROWS_WITH_AS(homog::cli::parse_config(no_kind),
                       doctest::Contains("experiment"), homog::ConfigError);
}

TEST_CASE("validate accepts a complete config and flags broken ones") {
  SUBCASE("clean config has no violations at all") {
    CHECK(homog::cli::validate(tiny_coeff1d()).empty());
  }
  SUBCASE("missing seed is advisory only") {
    ExperimentConfig c = tiny_coeff1d();
    c.base_seed_given = false;
    const auto v = homog::cli::validate(c);
    CHECK(has_violation(v, "base_seed", true));
    CHECK(all_warnings(v));
  }
  SUBCASE("eta must increase") {
    ExperimentConfig c = tiny_coeff1d();
    c.eta = {200.0, 100.0};
    CHECK(has_violation(homog::cli::validate(c), "eta", false));
  }
  SUBCASE("sample counts must not grow with the level") {
    ExperimentConfig c = tiny_coeff1d();
    c.m = {3, 6};
    CHECK(has_violation(homog::cli::validate(c), "m", false));
  }
  SUBCASE("scale separation warnings scale with epsilon") {
    ExperimentConfig c = tiny_coeff1d();
    c.eta = {1.0, 2.0};
    c.m = {6, 3};
    c.epsilon = 0.05;  // below eta[0]/10: silent
    CHECK(homog::cli::validate(c).empty());
    c.epsilon = 0.3;  // above eta[0]/10: weak separation
    auto v = homog::cli::validate(c);
    CHECK(has_violation(v, "epsilon", true));
    CHECK(all_warnings(v));
    c.epsilon = 0.8;  // above eta[0]/2: no separation, still advisory
    v = homog::cli::validate(c);
    CHECK(has_violation(v, "epsilon", true));
    CHECK(all_warnings(v));
  }
  SUBCASE("solution experiments need RVE sizes per mesh level") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::Solution1D;
    c.H = {0.25, 0.125};
    c.M = {4, 2};
    c.base_seed_given = true;
    CHECK(has_violation(homog::cli::validate(c), "eta", false));
    c.eta = {0.125, 0.25};
    CHECK(homog::cli::validate(c).empty());
  }
  SUBCASE("mesh ladder must refine by integer factors") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::Solution1D;
    c.H = {0.25, 0.1};  // 0.25 / 0.1 is not an integer
    c.M = {4, 2};
    c.eta = {0.125, 0.25};
    c.base_seed_given = true;
    CHECK(has_violation(homog::cli::validate(c), "H", false));
  }
  SUBCASE("enums are checked") {
    ExperimentConfig c = tiny_coeff1d();
    c.coupling = "antithetic";
    CHECK(has_violation(homog::cli::validate(c), "coupling", false));
    c = tiny_coeff1d();
    c.bc = "periodic";
    CHECK(has_violation(homog::cli::validate(c), "bc", false));
    c = tiny_coeff1d();
    c.tensor_form = "stress";
    CHECK(has_violation(homog::cli::validate(c), "tensor_form", false));
    c = tiny_coeff1d();
    c.family = "checkerboard";
    CHECK(has_violation(homog::cli::validate(c), "family", false));
  }
  SUBCASE("micro mesh must tile every RVE") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::Coeff2D;
    c.eta = {0.125, 0.25};
    c.m = {4, 2};
    c.micro_h = 0.03;
    c.base_seed_given = true;
    CHECK(has_violation(homog::cli::validate(c), "micro_h", false));
    c.micro_h = 0.0625;
    CHECK(homog::cli::validate(c).empty());
  }
}

TEST_CASE("config hash ignores execution layout but tracks the science") {
  const ExperimentConfig a = tiny_coeff1d();
  ExperimentConfig b = a;
  b.threads = 16;
  b.out_dir = "elsewhere";
  CHECK(homog::cli::config_hash(a) == homog::cli::config_hash(b));

  ExperimentConfig c = a;
  c.eta = {100.0, 400.0};
  CHECK(homog::cli::config_hash(a) != homog::cli::config_hash(c));

  ExperimentConfig d = a;
  d.base_seed = 43;
  CHECK(homog::cli::config_hash(a) != homog::cli::config_hash(d));
}

TEST_CASE("thread resolution: env beats flag beats config") {
  ExperimentConfig c = tiny_coeff1d();
  c.threads = 2;
  unsetenv("HOMOG_THREADS");
  CHECK(homog::cli::resolve_threads(c, 0) == 2);
  CHECK(homog::cli::resolve_threads(c, 5) == 5);
  setenv("HOMOG_THREADS", "7", 1);
  CHECK(homog::cli::resolve_threads(c, 5) == 7);
  setenv("HOMOG_THREADS", "abc", 1);  // unparsable values are ignored
  CHECK(homog::cli::resolve_threads(c, 5) == 5);
  setenv("HOMOG_THREADS", "0", 1);  // out of range likewise
  CHECK(homog::cli::resolve_threads(c, 5) == 5);
  unsetenv("HOMOG_THREADS");
  c.threads = -3;  // nonsense config still yields a usable count
  CHECK(homog::cli::resolve_threads(c, 0) == 1);
}

TEST_CASE("coefficient experiment writes a complete artifact set") {
  ExperimentConfig c = tiny_coeff1d();
  const fs::path dir = fresh_dir("coeff1d_smoke");
  c.out_dir = dir.string();
  REQUIRE(homog::cli::run_experiment(c) == 0);

  const std::string levels = slurp(dir / "levels.csv");
  CHECK(levels.rfind("level,eta,m,mean_diff,var_diff,cost", 0) == 0);
  CHECK(line_count(levels) == 1 + c.eta.size());

  const std::string reps = slurp(dir / "repetitions.csv");
  CHECK(reps.rfind("rep_index,rel_sq_error_mlmc,rel_sq_error_mc", 0) == 0);
  CHECK(line_count(reps) == 1 + static_cast<std::size_t>(c.nb));

  CHECK(fs::exists(dir / "plot.py"));

  const json manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("experiment") == "coeff-1d");
  CHECK(manifest.at("config") == homog::cli::config_to_json(c));
  char expect_hash[32];
  std::snprintf(expect_hash, sizeof expect_hash, "%016llx",
                static_cast<unsigned long long>(homog::cli::config_hash(c)));
  CHECK(manifest.at("config_hash") == expect_hash);
  CHECK(manifest.at("seeds").at("base_seed") == 42);
  CHECK(manifest.at("derived").contains("gain"));
  bool lists_levels = false;
  for (const auto& f : manifest.at("files"))
    lists_levels = lists_levels || f == "levels.csv";
  CHECK(lists_levels);
}

TEST_CASE("identical configs produce byte-identical csv artifacts") {
  ExperimentConfig c = tiny_coeff1d();
  const fs::path d1 = fresh_dir("det_a");
  const fs::path d2 = fresh_dir("det_b");
  c.out_dir = d1.string();
  REQUIRE(homog::cli::run_experiment(c) == 0);
  c.out_dir = d2.string();
  REQUIRE(homog::cli::run_experiment(c) == 0);
  for (const char* name : {"levels.csv", "repetitions.csv"})
    CHECK(slurp(d1 / name) == slurp(d2 / name));
}

TEST_CASE("synthetic rate experiment reproduces its own target") {
  ExperimentConfig c;
  c.experiment = ExperimentKind::EstimateBeta;
  c.synthetic = true;
  c.beta = 1.53;
  c.ln_c = 1.059;
  c.eta = {0.1, 0.2, 0.4};
  c.epsilon = 0.01;
  c.base_seed = 1;
  c.base_seed_given = true;
  const fs::path dir = fresh_dir("beta_synthetic");
  c.out_dir = dir.string();
  REQUIRE(homog::cli::run_experiment(c) == 0);

  const std::string fit = slurp(dir / "fit.csv");
  std::istringstream in(fit);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "beta,ln_c,stderr_beta");
  std::getline(in, row);
  std::replace(row.begin(), row.end(), ',', ' ');
  std::istringstream cells(row);
  double beta = 0.0, ln_c = 0.0, se = 0.0;
  cells >> beta >> ln_c >> se;
  CHECK(beta == doctest::Approx(1.53).epsilon(1e-10));
  CHECK(ln_c == doctest::Approx(1.059).epsilon(1e-10));
  CHECK(se < 1e-10);
  CHECK(line_count(slurp(dir / "points.csv")) == 1 + c.eta.size());
}

TEST_CASE("cost study emits both ratio tables") {
  ExperimentConfig c;
  c.experiment = ExperimentKind::WeightedCostStudy;
  c.betas = {1.0, 2.0};
  c.max_levels = 3;
  c.cost_dim = 2;
  c.beta = 2.0;
  c.base_seed = 1;
  c.base_seed_given = true;
  const fs::path dir = fresh_dir("cost_study");
  c.out_dir = dir.string();
  REQUIRE(homog::cli::run_experiment(c) == 0);

  const std::string ratios = slurp(dir / "cost_ratios.csv");
  CHECK(ratios.rfind("beta,levels,w_mlmc,w_mc,ratio", 0) == 0);
  CHECK(line_count(ratios) == 1 + 2 * 3);
  // single-level MLMC is plain MC, so the first row's ratio is exactly one
  std::istringstream in(ratios);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(row.substr(row.rfind(',') + 1) == "1");

  const std::string weighted = slurp(dir / "weighted_ratios.csv");
  CHECK(weighted.rfind("levels,rve_ratio,coarse_ratio", 0) == 0);
  CHECK(line_count(weighted) == 1 + 3);
}

TEST_CASE("invalid configs are refused before any work happens") {
  ExperimentConfig c = tiny_coeff1d();
  c.eta = {200.0, 100.0};
  const fs::path dir = fresh_dir("refused");
  c.out_dir = (dir / "never").string();
  CHECK(homog::cli::run_experiment(c) == 2);
  CHECK_FALSE(fs::exists(dir / "never" / "manifest.json"));
}

TEST_CASE("binary: validate subcommand reports config health") {
  const fs::path dir = fresh_dir("argv");
  const fs::path good = dir / "good.json";
  write_file(good, R"({"experiment":"coeff-1d","family":"unit-interval",
    "eta":[100.0,200.0],"m":[6,3],"nb":3,"base_seed":42})");
  const fs::path bad = dir / "bad.json";
  write_file(bad, R"({"experiment":"coeff-1d","family":"unit-interval",
    "eta":[200.0,100.0],"m":[6,3],"nb":3,"base_seed":42})");

  CHECK(run_cli("validate --config " + good.string()) == 0);
  CHECK(run_cli("validate --config " + bad.string()) == 2);
  CHECK(run_cli("validate --config " + (dir / "missing.json").string()) != 0);
}

TEST_CASE("binary: subcommand must match the config's experiment") {
  const fs::path dir = fresh_dir("argv_kind");
  const fs::path cfg = dir / "cfg.json";
  write_file(cfg, R"({"experiment":"coeff-1d","family":"unit-interval",
    "eta":[100.0,200.0],"m":[6,3],"nb":3,"base_seed":42})");
  CHECK(run_cli("estimate-beta --config " + cfg.string()) == 2);

  const fs::path out = dir / "run";
  CHECK(run_cli("coeff-1d --config " + cfg.string() + " --out " +
                out.string()) == 0);
  CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("binary: flags override the config file") {
  const fs::path dir = fresh_dir("argv_flags");
  const fs::path cfg = dir / "cfg.json";
  write_file(cfg, R"({"experiment":"coeff-1d","family":"unit-interval",
    "eta":[100.0,200.0],"m":[6,3],"nb":3,"base_seed":42,
    "out_dir":"ignored"})");
  const fs::path out = dir / "seeded";
  REQUIRE(run_cli("coeff-1d --config " + cfg.string() + " --seed 99 --out " +
                  out.string()) == 0);
  const json manifest = json::parse(slurp(out / "manifest.json"));
  CHECK(manifest.at("config").at("base_seed") == 99);
  CHECK(manifest.at("config").at("out_dir") == out.string());
}

TEST_CASE("binary: bad usage exits with a config error code") {
  CHECK(run_cli("") != 0);                  // a subcommand is required
  CHECK(run_cli("coeff-1d") != 0);          // --config is required
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("coeff-1d --help") == 0);
}
