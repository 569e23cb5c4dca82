#include "homog/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "homog/errors.hpp"

namespace homog::cli {

using nlohmann::json;

ExperimentKind parse_kind(const std::string& name) {
  if (name == "estimate-beta") return ExperimentKind::EstimateBeta;
  if (name == "coeff-1d") return ExperimentKind::Coeff1D;
  if (name == "coeff-2d") return ExperimentKind::Coeff2D;
  if (name == "solution-1d") return ExperimentKind::Solution1D;
  if (name == "solution-2d") return ExperimentKind::Solution2D;
  if (name == "weighted-cost") return ExperimentKind::WeightedCostStudy;
  throw ConfigError("config.experiment: unknown experiment '" + name + "'");
}

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::EstimateBeta: return "estimate-beta";
    case ExperimentKind::Coeff1D: return "coeff-1d";
    case ExperimentKind::Coeff2D: return "coeff-2d";
    case ExperimentKind::Solution1D: return "solution-1d";
    case ExperimentKind::Solution2D: return "solution-2d";
    case ExperimentKind::WeightedCostStudy: return "weighted-cost";
  }
  return "unknown";
}

namespace {

[[noreturn]] void type_error(const std::string& key, const char* want) {
  throw ConfigError("config." + key + ": expected " + want);
}

double get_number(const json& j, const std::string& key, double def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number()) type_error(key, "a number");
  return j.at(key).get<double>();
}

long long get_integer(const json& j, const std::string& key, long long def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_number_integer()) type_error(key, "an integer");
  return j.at(key).get<long long>();
}

bool get_bool(const json& j, const std::string& key, bool def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_boolean()) type_error(key, "a boolean");
  return j.at(key).get<bool>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& def) {
  if (!j.contains(key)) return def;
  if (!j.at(key).is_string()) type_error(key, "a string");
  return j.at(key).get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) type_error(key, "an array of numbers");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) type_error(key, "an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<long long> get_integers(const json& j, const std::string& key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) type_error(key, "an array of integers");
  std::vector<long long> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) type_error(key, "an array of integers");
    out.push_back(v.get<long long>());
  }
  return out;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment", "eta", "H", "m", "M", "m_ref", "family",
      "family_constant", "epsilon", "sigma", "corr_len", "field_mean",
      "micro_h", "bc", "tensor_form", "coupling", "nb", "reference_M",
      "reference_m", "beta", "ln_c", "synthetic", "betas", "max_levels",
      "cost_dim", "base_seed", "threads", "out_dir", "dump_samples"};
  return keys;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& item : j.items())
    if (!known_keys().count(item.key()))
      throw ConfigError("config." + item.key() + ": unknown key");
  if (!j.contains("experiment"))
    throw ConfigError("config.experiment: required key is missing");

  ExperimentConfig c;
  c.experiment = parse_kind(get_string(j, "experiment", ""));
  c.eta = get_numbers(j, "eta");
  c.H = get_numbers(j, "H");
  c.m = get_integers(j, "m");
  c.M = get_integers(j, "M");
  c.m_ref = get_integers(j, "m_ref");
  c.family = get_string(j, "family", c.family);
  c.family_constant = get_number(j, "family_constant", c.family_constant);
  c.epsilon = get_number(j, "epsilon", c.epsilon);
  c.sigma = get_number(j, "sigma", c.sigma);
  c.corr_len = get_number(j, "corr_len", c.corr_len);
  c.field_mean = get_number(j, "field_mean", c.field_mean);
  c.micro_h = get_number(j, "micro_h", c.micro_h);
  c.bc = get_string(j, "bc", c.bc);
  c.tensor_form = get_string(j, "tensor_form", c.tensor_form);
  c.coupling = get_string(j, "coupling", c.coupling);
  c.nb = static_cast<int>(get_integer(j, "nb", c.nb));
  c.reference_M = get_integer(j, "reference_M", c.reference_M);
  c.reference_m = get_integer(j, "reference_m", c.reference_m);
  c.beta = get_number(j, "beta", c.beta);
  c.ln_c = get_number(j, "ln_c", c.ln_c);
  c.synthetic = get_bool(j, "synthetic", c.synthetic);
  if (j.contains("betas")) c.betas = get_numbers(j, "betas");
  c.max_levels = static_cast<int>(get_integer(j, "max_levels", c.max_levels));
  c.cost_dim = static_cast<int>(get_integer(j, "cost_dim", c.cost_dim));
  if (j.contains("base_seed")) {
    if (!j.at("base_seed").is_number_integer())
      type_error("base_seed", "an integer");
    c.base_seed = j.at("base_seed").get<std::uint64_t>();
    c.base_seed_given = true;
  }
  c.threads = static_cast<int>(get_integer(j, "threads", c.threads));
  c.out_dir = get_string(j, "out_dir", c.out_dir);
  c.dump_samples = get_bool(j, "dump_samples", c.dump_samples);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

namespace {

void check_increasing(const std::vector<double>& v, const char* field,
                      std::vector<Violation>& out) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      out.push_back({field, "entries must be positive", false});
      return;
    }
    if (i > 0 && !(v[i] > v[i - 1])) {
      out.push_back({field, "entries must be strictly increasing", false});
      return;
    }
  }
}

void check_counts(const std::vector<long long>& v, const char* field,
                  std::vector<Violation>& out) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1) {
      out.push_back({field, "entries must be >= 1", false});
      return;
    }
    if (i > 0 && v[i] > v[i - 1]) {
      out.push_back({field, "entries must be non-increasing", false});
      return;
    }
  }
}

void check_same_length(std::size_t a, std::size_t b, const char* field,
                       const char* other, std::vector<Violation>& out) {
  if (a != 0 && b != 0 && a != b)
    out.push_back({field, std::string("length must match ") + other, false});
}

bool divides_evenly(double big, double small) {
  const double r = big / small;
  return std::fabs(r - std::round(r)) <= 1e-9 * r;
}

}  // namespace

std::vector<Violation> validate(const ExperimentConfig& c) {
  std::vector<Violation> out;
  const auto kind = c.experiment;

  if (c.nb < 1) out.push_back({"nb", "must be >= 1", false});
  if (c.threads < 1) out.push_back({"threads", "must be >= 1", false});
  if (!c.base_seed_given)
    out.push_back({"base_seed", "not set; defaulting to 1", true});

  check_increasing(c.eta, "eta", out);
  check_counts(c.m, "m", out);
  check_counts(c.M, "M", out);
  check_counts(c.m_ref, "m_ref", out);

  // H runs from coarse to fine, each step refining by an integer factor.
  for (std::size_t i = 0; i < c.H.size(); ++i) {
    if (!(c.H[i] > 0.0) || c.H[i] > 1.0) {
      out.push_back({"H", "entries must lie in (0, 1]", false});
      break;
    }
    if (!divides_evenly(1.0, c.H[i])) {
      out.push_back({"H", "1/H must be an integer", false});
      break;
    }
    if (i > 0 && (!(c.H[i] < c.H[i - 1]) ||
                  !divides_evenly(c.H[i - 1], c.H[i]))) {
      out.push_back({"H", "entries must refine by integer factors", false});
      break;
    }
  }

  // Scale separation is advisory: the standing assumption is eta_1 >= 10 eps,
  // and even eta_1 = eps only degrades accuracy, so nothing here is fatal.
  if (c.epsilon > 0.0 && !c.eta.empty() && c.eta.front() > 0.0) {
    if (c.epsilon > 0.5 * c.eta.front())
      out.push_back({"epsilon",
                     "no scale separation: epsilon exceeds eta[0]/2", true});
    else if (c.epsilon > 0.1 * c.eta.front())
      out.push_back({"epsilon",
                     "weak scale separation: epsilon exceeds eta[0]/10", true});
  }

  if (c.coupling != "shared" && c.coupling != "independent")
    out.push_back({"coupling", "must be 'shared' or 'independent'", false});
  if (c.bc != "dirichlet-linear" && c.bc != "dirichlet-noflow")
    out.push_back({"bc", "must be 'dirichlet-linear' or 'dirichlet-noflow'",
                   false});
  if (c.tensor_form != "flux" && c.tensor_form != "energy")
    out.push_back({"tensor_form", "must be 'flux' or 'energy'", false});

  const bool needs_eta_m = kind == ExperimentKind::Coeff1D ||
                           kind == ExperimentKind::Coeff2D ||
                           (kind == ExperimentKind::EstimateBeta && !c.synthetic);
  if (needs_eta_m) {
    if (c.eta.size() < 2)
      out.push_back({"eta", "need at least two levels", false});
    if (c.m.empty())
      out.push_back({"m", "per-level sample counts are required", false});
    check_same_length(c.eta.size(), c.m.size(), "m", "eta", out);
  }
  if (kind == ExperimentKind::EstimateBeta && c.synthetic) {
    if (c.eta.size() < 2)
      out.push_back({"eta", "need at least two levels", false});
    if (!(c.epsilon > 0.0))
      out.push_back({"epsilon", "required for the synthetic target", false});
  }
  if (kind == ExperimentKind::Coeff1D) {
    if (c.family != "sine-separable" && c.family != "unit-interval" &&
        c.family != "exp-cos")
      out.push_back({"family",
                     "must be 'sine-separable', 'unit-interval' or 'exp-cos'",
                     false});
  }
  if (kind == ExperimentKind::Coeff2D || kind == ExperimentKind::Solution2D ||
      (kind == ExperimentKind::EstimateBeta && !c.synthetic)) {
    if (!(c.micro_h > 0.0))
      out.push_back({"micro_h", "must be positive", false});
    else
      for (double e : c.eta)
        if (e > 0.0 && !divides_evenly(e, c.micro_h)) {
          out.push_back({"micro_h", "must divide every RVE size evenly", false});
          break;
        }
    if (!(c.sigma > 0.0)) out.push_back({"sigma", "must be positive", false});
    if (!(c.corr_len > 0.0))
      out.push_back({"corr_len", "must be positive", false});
  }
  if (kind == ExperimentKind::Solution1D || kind == ExperimentKind::Solution2D) {
    if (c.H.size() < 2) out.push_back({"H", "need at least two levels", false});
    if (c.M.empty())
      out.push_back({"M", "per-level realization counts are required", false});
    if (c.eta.empty())
      out.push_back({"eta", "per-level RVE sizes are required", false});
    check_same_length(c.H.size(), c.M.size(), "M", "H", out);
    check_same_length(c.H.size(), c.eta.size(), "eta", "H", out);
  }
  if (kind == ExperimentKind::Solution2D) {
    if (c.m.empty())
      out.push_back({"m", "per-level micro sample counts are required", false});
    check_same_length(c.H.size(), c.m.size(), "m", "H", out);
    if (c.reference_M < 2)
      out.push_back({"reference_M", "must be >= 2", false});
    if (c.reference_m < 1)
      out.push_back({"reference_m", "must be >= 1", false});
  }
  if (kind == ExperimentKind::WeightedCostStudy) {
    if (c.max_levels < 1)
      out.push_back({"max_levels", "must be >= 1", false});
    if (c.betas.empty())
      out.push_back({"betas", "need at least one rate", false});
    for (double b : c.betas)
      if (!(b > 0.0)) {
        out.push_back({"betas", "rates must be positive", false});
        break;
      }
    if (c.cost_dim < 1 || c.cost_dim > 3)
      out.push_back({"cost_dim", "must be 1, 2 or 3", false});
  }
  return out;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = kind_name(c.experiment);
  j["eta"] = c.eta;
  j["H"] = c.H;
  j["m"] = c.m;
  j["M"] = c.M;
  j["m_ref"] = c.m_ref;
  j["family"] = c.family;
  j["family_constant"] = c.family_constant;
  j["epsilon"] = c.epsilon;
  j["sigma"] = c.sigma;
  j["corr_len"] = c.corr_len;
  j["field_mean"] = c.field_mean;
  j["micro_h"] = c.micro_h;
  j["bc"] = c.bc;
  j["tensor_form"] = c.tensor_form;
  j["coupling"] = c.coupling;
  j["nb"] = c.nb;
  j["reference_M"] = c.reference_M;
  j["reference_m"] = c.reference_m;
  j["beta"] = c.beta;
  j["ln_c"] = c.ln_c;
  j["synthetic"] = c.synthetic;
  j["betas"] = c.betas;
  j["max_levels"] = c.max_levels;
  j["cost_dim"] = c.cost_dim;
  j["base_seed"] = c.base_seed;
  j["threads"] = c.threads;
  j["out_dir"] = c.out_dir;
  j["dump_samples"] = c.dump_samples;
  return j;
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  // FNV-1a over the canonical dump; thread count and output path are
  // excluded so runs that differ only in execution layout hash alike.
  json j = config_to_json(c);
  j.erase("threads");
  j.erase("out_dir");
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

int resolve_threads(const ExperimentConfig& c, int flag_threads) {
  int threads = c.threads;
  if (flag_threads > 0) threads = flag_threads;
  if (const char* env = std::getenv("HOMOG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) threads = static_cast<int>(v);
  }
  return threads < 1 ? 1 : threads;
}

}  // namespace homog::cli
