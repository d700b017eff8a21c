#include "hyperlasso/analysis.hpp"

#include "hyperlasso/error.hpp"
#include "hyperlasso/estimators.hpp"
#include "hyperlasso/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperlasso {

double discrete_inner(const QuadratureRule& rule, std::span<const double> a,
                      std::span<const double> b) {
  return kernels::weighted_dot(rule.weights(), a, b);
}

std::vector<double> l2_errors(const BasisSet& basis, std::span<const CoefficientVector> coeffs,
                              std::span<const double> reference, const QuadratureRule& eval_rule) {
  if (eval_rule.exactness_degree() < 2 * basis.degree_cap() + 10) {
    throw InvalidArgument("l2_error: evaluation rule exact to degree " +
                          std::to_string(eval_rule.exactness_degree()) + " < 2L + 10 = " +
                          std::to_string(2 * basis.degree_cap() + 10));
  }
  if (reference.size() != eval_rule.size()) {
    throw InvalidArgument("l2_error: reference values do not match the evaluation rule");
  }
  for (const auto& c : coeffs) {
    if (c.size() != basis.size()) throw InvalidArgument("l2_error: coefficient length mismatch");
  }
  // The rule is exact to degree >= 2L, so the basis is orthonormal in its discrete
  // inner product and, with g the discrete projection coefficients of the reference,
  //   sum_j w_j (p(x_j) - f_j)^2 = |c - g|^2 + sum_j w_j (f_j - (Pf)(x_j))^2.
  // The residual term is computed once; each expansion then costs O(d). Both terms
  // are sums of squares, so small errors do not suffer from cancellation.
  const auto g = hyper_coefficients(eval_rule, basis, reference);
  const std::vector<CoefficientVector> projection{g};
  const auto pf = evaluate_on_rule(basis, projection, eval_rule).front();
  const double residual = kernels::weighted_sq_diff(eval_rule.weights(), pf, reference);

  std::vector<double> errors;
  errors.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    double acc = residual;
    for (std::size_t l = 0; l < c.size(); ++l) acc += (c[l] - g[l]) * (c[l] - g[l]);
    errors.push_back(std::sqrt(acc));
  }
  return errors;
}

double l2_error(const Expansion& approx, const PointFunction& f, const QuadratureRule& eval_rule) {
  if (!approx.basis) throw InvalidArgument("l2_error: expansion has no basis");
  std::vector<double> reference(eval_rule.size());
  for (std::size_t j = 0; j < eval_rule.size(); ++j) {
    reference[j] = f(eval_rule.nodes()[j]);
    if (!std::isfinite(reference[j])) throw EvaluationError("l2_error: f is not finite");
  }
  const CoefficientVector* one = &approx.coeffs;
  return l2_errors(*approx.basis, std::span<const CoefficientVector>(one, 1), reference,
                   eval_rule)
      .front();
}

double k_functional(const CoefficientVector& alpha, double lambda, const PenaltyVector& mu) {
  if (!(lambda >= 0.0)) throw InvalidArgument("k_functional: lambda must be >= 0");
  if (alpha.size() != mu.size()) throw InvalidArgument("k_functional: length mismatch");
  double k = 0.0;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    const double s = soft_threshold(alpha[l], lambda * mu[l]);
    // S(a) a - S(a)^2 = S(a) (a - S(a)) >= 0 termwise
    k += s * (alpha[l] - s);
  }
  return k;
}

double regularization_error(const CoefficientVector& c, double lambda, const PenaltyVector& mu) {
  if (c.size() != mu.size()) throw InvalidArgument("regularization_error: length mismatch");
  double acc = 0.0;
  for (std::size_t l = 0; l < c.size(); ++l) {
    const double k = lambda * mu[l];
    acc += std::abs(c[l]) <= k ? c[l] * c[l] : k * k;
  }
  return std::sqrt(acc);
}

StabilityCheck check_stability(const Expansion& expansion, const SampleSet& samples,
                               const QuadratureRule& rule, const ErrorReport& report,
                               std::optional<double> sup_norm) {
  constexpr double kTol = 1e-9;
  StabilityCheck out;
  for (double b : expansion.coeffs.values) out.beta_norm_sq += b * b;
  const double ff = discrete_inner(rule, samples.noisy, samples.noisy);
  out.discrete_bound = ff - 2.0 * report.k_functional;
  out.passed = out.beta_norm_sq <= out.discrete_bound + kTol;
  std::ostringstream detail;
  detail << "sum beta^2 = " << out.beta_norm_sq << ", <f,f>_N - 2K = " << out.discrete_bound;
  if (sup_norm) {
    out.sup_bound = volume(rule.domain()) * (*sup_norm) * (*sup_norm);
    out.passed = out.passed && out.beta_norm_sq <= *out.sup_bound + kTol;
    detail << ", V ||f||_inf^2 = " << *out.sup_bound;
  }
  out.detail = detail.str();
  return out;
}

bool satisfies_kkt(const CoefficientVector& alpha, const CoefficientVector& beta, double lambda,
                   const PenaltyVector& mu) {
  if (alpha.size() != beta.size() || alpha.size() != mu.size()) return false;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    const double k = lambda * mu[l];
    if (beta[l] != 0.0) {
      // beta - alpha + k sign(beta) = 0, exactly as computed by the threshold
      const double expected = beta[l] > 0.0 ? alpha[l] - k : alpha[l] + k;
      if (beta[l] != expected) return false;
      if ((beta[l] > 0.0) != (alpha[l] > 0.0)) return false;
    } else if (std::abs(alpha[l]) > k) {
      return false;
    }
  }
  return true;
}

std::size_t predicted_sparsity(const CoefficientVector& alpha, double lambda,
                               const PenaltyVector& mu) {
  std::size_t nonzero = 0;
  std::size_t killed = 0;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    if (alpha[l] == 0.0) continue;
    ++nonzero;
    if (std::abs(alpha[l]) <= lambda * mu[l]) ++killed;
  }
  return nonzero - killed;
}

InvariantReport check_lasso_invariants(const QuadratureRule& rule, std::span<const double> data,
                                       const CoefficientVector& alpha,
                                       const CoefficientVector& beta, double lambda,
                                       const PenaltyVector& mu, std::span<const double> fitted,
                                       double tol) {
  InvariantReport r;
  const auto fail = [&r](std::string msg) {
    r.passed = false;
    r.failures.push_back(std::move(msg));
  };

  r.k_functional = k_functional(alpha, lambda, mu);
  r.f_norm_sq = discrete_inner(rule, data, data);
  const double f_lf = discrete_inner(rule, data, fitted);
  const double lf_lf = discrete_inner(rule, fitted, fitted);
  std::vector<double> resid(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) resid[j] = data[j] - fitted[j];
  const double res_res = discrete_inner(rule, resid, resid);

  if (r.k_functional < 0.0 || r.k_functional > r.f_norm_sq / 2.0 + 1e-12) {
    std::ostringstream s;
    s << "K(f) = " << r.k_functional << " outside [0, <f,f>_N/2 = " << r.f_norm_sq / 2.0 << "]";
    fail(s.str());
  }
  r.cross_identity_residual = std::abs((f_lf - lf_lf) - r.k_functional);
  if (r.cross_identity_residual > tol) {
    std::ostringstream s;
    s << "<f - Lf, Lf>_N differs from K(f) by " << r.cross_identity_residual;
    fail(s.str());
  }
  r.decomposition_residual =
      std::abs(lf_lf + res_res - (r.f_norm_sq - 2.0 * r.k_functional));
  if (r.decomposition_residual > tol) {
    std::ostringstream s;
    s << "<Lf,Lf>_N + <f-Lf,f-Lf>_N differs from <f,f>_N - 2K by " << r.decomposition_residual;
    fail(s.str());
  }
  double beta_sq = 0.0;
  for (double b : beta.values) beta_sq += b * b;
  if (beta_sq > r.f_norm_sq - 2.0 * r.k_functional + tol) {
    std::ostringstream s;
    s << "sum beta^2 = " << beta_sq << " exceeds <f,f>_N - 2K = "
      << r.f_norm_sq - 2.0 * r.k_functional;
    fail(s.str());
  }
  if (!satisfies_kkt(alpha, beta, lambda, mu)) fail("KKT certificate violated");
  if (beta.count_nonzero() != predicted_sparsity(alpha, lambda, mu)) {
    fail("sparsity count differs from ||alpha||_0 minus thresholded entries");
  }
  bool below_max = false;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    if (lambda * mu[l] < std::abs(alpha[l])) below_max = true;
  }
  if (below_max && beta.count_nonzero() == 0) fail("lambda below lambda_max but beta == 0");
  return r;
}

}  // namespace hyperlasso
