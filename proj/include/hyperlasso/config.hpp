#pragma once

#include "hyperlasso/domain.hpp"
#include "hyperlasso/noise.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hyperlasso {

enum class Estimator { Hyper, Lasso, Filtered, Tikhonov };

std::string_view to_string(Estimator e) noexcept;
Estimator parse_estimator(std::string_view name);

enum class TikhonovPenalty { Identity, LaplaceBeltrami };

/// One experiment: a domain pipeline, estimators, a lambda grid and a list
/// of noise settings, each repeated `trials` times.
///
/// JSON keys (unknown keys are rejected):
///   domain, L, N, t_design, t, estimators, lambda_grid (log10 values),
///   tikhonov_lambda (log10, optional override), tikhonov_penalty,
///   mu (number or per-coefficient array), noise (list of noise objects),
///   noise_mask_zero, trials, seed, test_function, function_file, output_dir
struct ExperimentConfig {
  DomainKind domain = DomainKind::Interval;
  int L = 0;
  std::optional<int> N;                  // interval: Gauss points, disc: radial parameter
  std::optional<std::string> t_design;   // sphere only
  std::optional<int> t;
  std::vector<Estimator> estimators{Estimator::Hyper, Estimator::Lasso, Estimator::Filtered,
                                    Estimator::Tikhonov};
  std::vector<double> lambda_grid{-1.0};  // log10(lambda)
  std::optional<double> tikhonov_lambda;  // log10, replaces the grid for Tikhonov
  TikhonovPenalty tikhonov_penalty = TikhonovPenalty::Identity;
  std::vector<double> mu{1.0};  // one value broadcasts
  std::vector<NoiseSpec> noise{NoiseSpec::none()};
  bool noise_mask_zero = false;
  int trials = 1;
  std::uint64_t seed = 0;
  std::string test_function = "exp_sq";
  std::optional<std::string> function_file;  // test_function == "user-file"
  std::string output_dir = "out";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

NoiseSpec noise_from_json(const nlohmann::json& j);
nlohmann::json noise_to_json(const NoiseSpec& spec);

/// Structural checks that do not need the quadrature built.
void validate(const ExperimentConfig& config);

}  // namespace hyperlasso
