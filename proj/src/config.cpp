#include "hyperlasso/config.hpp"

#include "hyperlasso/error.hpp"
#include "hyperlasso/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

namespace hyperlasso {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!keys.contains(item.key())) {
      throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::Hyper: return "hyper";
    case Estimator::Lasso: return "lasso";
    case Estimator::Filtered: return "filtered";
    case Estimator::Tikhonov: return "tikhonov";
  }
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "hyper") return Estimator::Hyper;
  if (name == "lasso") return Estimator::Lasso;
  if (name == "filtered") return Estimator::Filtered;
  if (name == "tikhonov") return Estimator::Tikhonov;
  throw ConfigError("unknown estimator '" + std::string(name) + "'");
}

NoiseSpec noise_from_json(const json& j) {
  reject_unknown(j, {"kind", "sigma", "amplitude", "probability", "components", "seed"}, "noise");
  const auto kind = get<std::string>(j, "kind");
  NoiseSpec spec;
  if (kind == "none") {
    spec = NoiseSpec::none();
  } else if (kind == "gaussian") {
    spec = NoiseSpec::gaussian(get<double>(j, "sigma"));
  } else if (kind == "impulse") {
    spec = NoiseSpec::impulse(get<double>(j, "amplitude"),
                              j.contains("probability") ? get<double>(j, "probability") : 0.5);
  } else if (kind == "mixed") {
    std::vector<NoiseSpec> parts;
    for (const auto& c : j.at("components")) parts.push_back(noise_from_json(c));
    spec = NoiseSpec::mixed(std::move(parts));
  } else {
    throw ConfigError("unknown noise kind '" + kind + "'");
  }
  if (j.contains("seed")) spec.seed = get<std::uint64_t>(j, "seed");
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

json noise_to_json(const NoiseSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case NoiseSpec::Kind::None: break;
    case NoiseSpec::Kind::Gaussian: j["sigma"] = spec.sigma; break;
    case NoiseSpec::Kind::Impulse:
      j["amplitude"] = spec.amplitude;
      j["probability"] = spec.probability;
      break;
    case NoiseSpec::Kind::Mixed: {
      json parts = json::array();
      for (const auto& c : spec.components) parts.push_back(noise_to_json(c));
      j["components"] = parts;
      break;
    }
  }
  if (spec.seed != 0) j["seed"] = spec.seed;
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"domain", "L", "N", "t_design", "t", "estimators", "lambda_grid",
                  "tikhonov_lambda", "tikhonov_penalty", "mu", "noise", "noise_mask_zero",
                  "trials", "seed", "test_function", "function_file", "output_dir"},
                 "config");
  ExperimentConfig c;
  try {
    c.domain = parse_domain(get<std::string>(j, "domain"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  c.L = get<int>(j, "L");
  if (j.contains("N")) c.N = get<int>(j, "N");
  if (j.contains("t_design")) c.t_design = get<std::string>(j, "t_design");
  if (j.contains("t")) c.t = get<int>(j, "t");
  if (j.contains("estimators")) {
    c.estimators.clear();
    for (const auto& e : j.at("estimators")) c.estimators.push_back(parse_estimator(e.get<std::string>()));
  }
  if (j.contains("lambda_grid")) c.lambda_grid = get<std::vector<double>>(j, "lambda_grid");
  if (j.contains("tikhonov_lambda")) c.tikhonov_lambda = get<double>(j, "tikhonov_lambda");
  if (j.contains("tikhonov_penalty")) {
    const auto p = get<std::string>(j, "tikhonov_penalty");
    if (p == "identity") {
      c.tikhonov_penalty = TikhonovPenalty::Identity;
    } else if (p == "laplace_beltrami") {
      c.tikhonov_penalty = TikhonovPenalty::LaplaceBeltrami;
    } else {
      throw ConfigError("unknown tikhonov_penalty '" + p + "'");
    }
  }
  if (j.contains("mu")) {
    const auto& m = j.at("mu");
    c.mu = m.is_array() ? m.get<std::vector<double>>() : std::vector<double>{m.get<double>()};
  }
  if (j.contains("noise")) {
    c.noise.clear();
    for (const auto& n : j.at("noise")) c.noise.push_back(noise_from_json(n));
  }
  if (j.contains("noise_mask_zero")) c.noise_mask_zero = get<bool>(j, "noise_mask_zero");
  if (j.contains("trials")) c.trials = get<int>(j, "trials");
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("test_function")) c.test_function = get<std::string>(j, "test_function");
  if (j.contains("function_file")) c.function_file = get<std::string>(j, "function_file");
  if (j.contains("output_dir")) c.output_dir = get<std::string>(j, "output_dir");
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["domain"] = to_string(c.domain);
  j["L"] = c.L;
  if (c.N) j["N"] = *c.N;
  if (c.t_design) j["t_design"] = *c.t_design;
  if (c.t) j["t"] = *c.t;
  json est = json::array();
  for (auto e : c.estimators) est.push_back(to_string(e));
  j["estimators"] = est;
  j["lambda_grid"] = c.lambda_grid;
  if (c.tikhonov_lambda) j["tikhonov_lambda"] = *c.tikhonov_lambda;
  j["tikhonov_penalty"] =
      c.tikhonov_penalty == TikhonovPenalty::Identity ? "identity" : "laplace_beltrami";
  if (c.mu.size() == 1) {
    j["mu"] = c.mu.front();
  } else {
    j["mu"] = c.mu;
  }
  json noise = json::array();
  for (const auto& n : c.noise) noise.push_back(noise_to_json(n));
  j["noise"] = noise;
  j["noise_mask_zero"] = c.noise_mask_zero;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["test_function"] = c.test_function;
  if (c.function_file) j["function_file"] = *c.function_file;
  j["output_dir"] = c.output_dir;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(j);
}

void validate(const ExperimentConfig& c) {
  if (c.L < 0) throw ConfigError("L must be >= 0");
  if (c.domain == DomainKind::Cube && c.L < 1) throw ConfigError("cube requires L >= 1");
  if (c.trials < 1) throw ConfigError("trials must be >= 1");
  if (c.estimators.empty()) throw ConfigError("at least one estimator is required");
  if (c.lambda_grid.empty()) throw ConfigError("lambda_grid must not be empty");
  for (double l : c.lambda_grid) {
    if (!std::isfinite(l)) throw ConfigError("lambda_grid entries must be finite log10 values");
  }
  if (c.noise.empty()) throw ConfigError("noise must list at least one setting");
  if (c.mu.empty()) throw ConfigError("mu must not be empty");
  for (double m : c.mu) {
    if (!(m > 0.0)) throw ConfigError("mu entries must be > 0");
  }
  if (c.N && *c.N < 1) throw ConfigError("N must be >= 1");
  if (c.t_design && c.domain != DomainKind::Sphere) {
    throw ConfigError("t_design is only valid on the sphere");
  }
  if (c.t_design && !c.t) throw ConfigError("t_design requires t");
  if (c.tikhonov_penalty == TikhonovPenalty::LaplaceBeltrami && c.domain != DomainKind::Sphere) {
    throw ConfigError("laplace_beltrami penalty is only valid on the sphere");
  }
  if (c.test_function == "user-file") {
    if (!c.function_file) throw ConfigError("test_function 'user-file' requires function_file");
  } else if (!is_built_in(c.test_function)) {
    throw ConfigError("unknown test_function '" + c.test_function + "'");
  } else if (built_in_domain(c.test_function) != c.domain) {
    throw ConfigError("test_function '" + c.test_function + "' does not live on the " +
                      std::string(to_string(c.domain)));
  }
}

}  // namespace hyperlasso
