#pragma once

#include "hyperlasso/analysis.hpp"
#include "hyperlasso/basis.hpp"
#include "hyperlasso/config.hpp"
#include "hyperlasso/estimators.hpp"
#include "hyperlasso/quadrature.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hyperlasso {

struct ResultRow {
  Estimator estimator = Estimator::Hyper;
  double lambda = 0.0;
  std::string noise_kind;
  std::string noise_param;
  double mean_l2_error = 0.0;
  double mean_beta_l0 = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;  // whole run; not written to table.csv
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  nlohmann::json meta;
};

/// Everything a config resolves to before any noise is drawn.
struct Pipeline {
  std::shared_ptr<const BasisSet> basis;
  QuadratureRule rule;
  QuadratureRule eval_rule;
  PointFunction f;
  std::optional<double> sup_norm;
};

/// Builds the quadrature, basis and test function. Throws ConfigError when
/// the rule cannot be exact to degree 2L and FileError for missing files.
Pipeline build_pipeline(const ExperimentConfig& config);

/// Rule used to measure L2 errors: Gauss-Legendre with 2N points on the
/// interval, disc_rule(2N), the product rule at 2L on the sphere and
/// cube_rule(L+10) on the cube.
QuadratureRule error_rule(const ExperimentConfig& config);

/// Runs every (estimator, lambda, noise) cell for `trials` draws. The
/// invariant suite runs on every Lasso fit; a violation throws
/// InvariantViolation.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// header + one line per row, 6 significant digits, LF endings.
std::string format_table_csv(const std::vector<ResultRow>& rows);

/// Writes table.csv and meta.json into `dir` (created if needed).
void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir);

/// Single fit per estimator on trial 0 of the first noise setting and the
/// first lambda; used by grid export.
std::vector<std::pair<Estimator, Expansion>> fit_once(const ExperimentConfig& config,
                                                      const Pipeline& pipeline);

/// Resolves a t-design path, falling back to $HYPERLASSO_TDESIGN_DIR.
std::filesystem::path resolve_t_design(const std::string& path);

}  // namespace hyperlasso
