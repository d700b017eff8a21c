#pragma once

#include "hyperlasso/estimators.hpp"
#include "hyperlasso/noise.hpp"
#include "hyperlasso/quadrature.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperlasso {

struct ErrorReport {
  double l2_error = 0.0;
  std::size_t sparsity = 0;
  double k_functional = 0.0;
  double discrete_f_norm_sq = 0.0;
  double stability_bound = 0.0;
  double lambda_max = 0.0;
};

/// <a, b>_N = sum_j w_j a_j b_j
double discrete_inner(const QuadratureRule& rule, std::span<const double> a,
                      std::span<const double> b);

/// Quadrature estimate of ||approx - f||_2. Requires
/// eval_rule.exactness_degree >= 2 * degree_cap + 10.
double l2_error(const Expansion& approx, const PointFunction& f, const QuadratureRule& eval_rule);

/// Batch form: errors of several expansions over one basis against
/// precomputed reference values f(x_j) on eval_rule.
std::vector<double> l2_errors(const BasisSet& basis, std::span<const CoefficientVector> coeffs,
                              std::span<const double> reference, const QuadratureRule& eval_rule);

/// K(f) = sum_l (S(alpha_l) alpha_l - S(alpha_l)^2), S = S_{lambda mu_l}. Always >= 0.
double k_functional(const CoefficientVector& alpha, double lambda, const PenaltyVector& mu);

/// sqrt(sum_{|c|<=lambda mu} c^2 + sum_{|c|>lambda mu} (lambda mu)^2)
double regularization_error(const CoefficientVector& c, double lambda, const PenaltyVector& mu);

struct StabilityCheck {
  bool passed = false;
  double beta_norm_sq = 0.0;      // sum beta^2
  double discrete_bound = 0.0;    // <f,f>_N - 2K(f)
  std::optional<double> sup_bound;  // V * ||f||_inf^2 when supplied
  std::string detail;
};

/// Asserts sum beta^2 <= <f,f>_N - 2K(f) (+1e-9) and, if `sup_norm` is given,
/// sum beta^2 <= V sup_norm^2 (+1e-9). `samples.noisy` is the data fitted.
StabilityCheck check_stability(const Expansion& expansion, const SampleSet& samples,
                               const QuadratureRule& rule, const ErrorReport& report,
                               std::optional<double> sup_norm = std::nullopt);

/// Outcome of the per-run invariant suite for one Lasso fit.
struct InvariantReport {
  bool passed = true;
  std::vector<std::string> failures;
  double k_functional = 0.0;
  double f_norm_sq = 0.0;
  double cross_identity_residual = 0.0;  // |<f - Lf, Lf>_N - K|
  double decomposition_residual = 0.0;   // |<Lf,Lf>_N + <f-Lf,f-Lf>_N - (<f,f>_N - 2K)|
};

/// Checks K bounds, the discrete inner-product identities, the stability
/// inequality, the KKT certificate, the exact sparsity count and the
/// nonzero guarantee below lambda_max. `fitted` holds the Lasso expansion
/// at the rule's nodes and `data` the fitted samples.
InvariantReport check_lasso_invariants(const QuadratureRule& rule, std::span<const double> data,
                                       const CoefficientVector& alpha,
                                       const CoefficientVector& beta, double lambda,
                                       const PenaltyVector& mu, std::span<const double> fitted,
                                       double tol = 1e-9);

/// Exact KKT certificate of a soft-thresholded vector.
bool satisfies_kkt(const CoefficientVector& alpha, const CoefficientVector& beta, double lambda,
                   const PenaltyVector& mu);

/// ||alpha||_0 - #{l : alpha_l != 0, |alpha_l| <= lambda mu_l}
std::size_t predicted_sparsity(const CoefficientVector& alpha, double lambda,
                               const PenaltyVector& mu);

}  // namespace hyperlasso
