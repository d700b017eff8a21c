#include "hyperlasso/estimators.hpp"

#include "hyperlasso/cube_transform.hpp"
#include "hyperlasso/error.hpp"
#include "hyperlasso/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hyperlasso {

namespace {

void require_aligned(const CoefficientVector& c, std::size_t d, const char* who) {
  if (c.size() != d) throw InvalidArgument(std::string(who) + ": coefficient length mismatch");
}

double cube_gamma(const std::array<int, 3>& idx) {
  double g = 1.0;
  for (int v : idx) g *= v > 0 ? std::numbers::sqrt2 : 1.0;
  return g;
}

std::size_t grid_offset(const std::array<int, 3>& idx, std::size_t P) {
  return (static_cast<std::size_t>(idx[0]) * P + static_cast<std::size_t>(idx[1])) * P +
         static_cast<std::size_t>(idx[2]);
}

// alpha_l = gamma_l sum_{i,j,k} F_ijk cos(i l1 pi/n) cos(j l2 pi/n) cos(k l3 pi/n),
// F = w f on the rule's nodes and zero on the rest of the grid.
CoefficientVector cube_coefficients(const QuadratureRule& rule, const BasisSet& basis,
                                    std::span<const double> samples) {
  const auto& layout = *rule.cube_layout();
  const auto P = static_cast<std::size_t>(layout.n) + 1;
  std::vector<double> grid(P * P * P, 0.0);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    grid[grid_offset(layout.index[j], P)] = rule.weights()[j] * samples[j];
  }
  const auto Q = static_cast<std::size_t>(basis.degree_cap()) + 1;
  const auto table = chebyshev_cosine_table(P, Q, layout.n);
  const auto sums = separable_transform_3d(grid, P, table, Q);

  CoefficientVector alpha;
  alpha.values.resize(basis.size());
  for (std::size_t e = 0; e < basis.size(); ++e) {
    const auto& idx = basis.index(e);
    alpha.values[e] = cube_gamma(idx) * sums[grid_offset(idx, Q)];
  }
  return alpha;
}

void check_fit_inputs(const QuadratureRule& rule, const BasisSet& basis,
                      std::span<const double> samples) {
  if (rule.domain() != basis.domain()) {
    throw InvalidArgument("hyper_coefficients: rule and basis live on different domains");
  }
  if (samples.size() != rule.size()) {
    throw InvalidArgument("hyper_coefficients: " + std::to_string(samples.size()) +
                          " samples for " + std::to_string(rule.size()) + " nodes");
  }
  if (rule.exactness_degree() < 2 * basis.degree_cap()) {
    throw InvalidArgument("hyper_coefficients: rule exact to degree " +
                          std::to_string(rule.exactness_degree()) + " < 2L = " +
                          std::to_string(2 * basis.degree_cap()));
  }
}

}  // namespace

std::size_t CoefficientVector::count_nonzero() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [](double v) { return v != 0.0; }));
}

PenaltyVector::PenaltyVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("PenaltyVector: penalties must be positive and finite");
    }
  }
}

PenaltyVector PenaltyVector::uniform(std::size_t d, double value) {
  return PenaltyVector(std::vector<double>(d, value));
}

PenaltyVector laplace_beltrami_penalty(const BasisSet& basis) {
  if (basis.domain() != DomainKind::Sphere) {
    throw InvalidArgument("laplace_beltrami_penalty: sphere basis required");
  }
  std::vector<double> h;
  h.reserve(basis.size());
  for (int l : basis.element_degree()) {
    const double eig = 1.0 + static_cast<double>(l) * (l + 1);
    h.push_back(eig * eig);
  }
  return PenaltyVector(std::move(h));
}

double soft_threshold(double a, double k) {
  if (k < 0.0) throw InvalidArgument("soft_threshold: threshold must be >= 0");
  if (a > k) return a - k;
  if (a < -k) return a + k;
  return 0.0;
}

CoefficientVector hyper_coefficients_direct(const QuadratureRule& rule, const BasisSet& basis,
                                            std::span<const double> samples) {
  check_fit_inputs(rule, basis, samples);
  CoefficientVector alpha;
  alpha.values.assign(basis.size(), 0.0);
  std::vector<double> row(basis.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    basis.eval_all(rule.nodes()[j], row);
    kernels::axpy(rule.weights()[j] * samples[j], row, alpha.values);
  }
  return alpha;
}

CoefficientVector hyper_coefficients(const QuadratureRule& rule, const BasisSet& basis,
                                     std::span<const double> samples) {
  check_fit_inputs(rule, basis, samples);
  if (basis.domain() == DomainKind::Cube && rule.cube_layout()) {
    return cube_coefficients(rule, basis, samples);
  }
  return hyper_coefficients_direct(rule, basis, samples);
}

CoefficientVector lasso_coefficients(const CoefficientVector& alpha, double lambda,
                                     const PenaltyVector& mu) {
  if (!(lambda > 0.0)) throw InvalidArgument("lasso_coefficients: lambda must be > 0");
  require_aligned(alpha, mu.size(), "lasso_coefficients");
  CoefficientVector beta;
  beta.values.resize(alpha.size());
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    beta.values[l] = soft_threshold(alpha[l], lambda * mu[l]);
  }
  return beta;
}

double filter_weight(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double s = std::sin(std::numbers::pi * t);
  return s * s;
}

CoefficientVector filtered_coefficients(const CoefficientVector& alpha, const BasisSet& basis) {
  if (basis.degree_cap() < 1) throw InvalidArgument("filtered_coefficients: L must be >= 1");
  require_aligned(alpha, basis.size(), "filtered_coefficients");
  const double L = basis.degree_cap();
  CoefficientVector beta;
  beta.values.resize(alpha.size());
  const auto degree = basis.element_degree();
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    beta.values[l] = filter_weight(degree[l] / L) * alpha[l];
  }
  return beta;
}

CoefficientVector tikhonov_coefficients(const CoefficientVector& alpha, double lambda,
                                        const PenaltyVector& penalty) {
  if (!(lambda >= 0.0)) throw InvalidArgument("tikhonov_coefficients: lambda must be >= 0");
  require_aligned(alpha, penalty.size(), "tikhonov_coefficients");
  CoefficientVector beta;
  beta.values.resize(alpha.size());
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    beta.values[l] = alpha[l] / (1.0 + lambda * penalty[l]);
  }
  return beta;
}

double lambda_max(const CoefficientVector& alpha) {
  if (alpha.size() == 0) throw InvalidArgument("lambda_max: empty coefficient vector");
  double m = 0.0;
  for (double v : alpha.values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> evaluate(const Expansion& expansion, std::span<const Point> points) {
  if (!expansion.basis) throw InvalidArgument("evaluate: expansion has no basis");
  const auto& basis = *expansion.basis;
  require_aligned(expansion.coeffs, basis.size(), "evaluate");
  std::vector<double> out;
  out.reserve(points.size());
  std::vector<double> row(basis.size());
  for (const auto& x : points) {
    basis.eval_all(x, row);
    out.push_back(kernels::dot(expansion.coeffs.values, row));
  }
  return out;
}

std::vector<std::vector<double>> evaluate_on_rule(const BasisSet& basis,
                                                  std::span<const CoefficientVector> coeffs,
                                                  const QuadratureRule& rule) {
  if (rule.domain() != basis.domain()) {
    throw InvalidArgument("evaluate_on_rule: rule and basis live on different domains");
  }
  for (const auto& c : coeffs) require_aligned(c, basis.size(), "evaluate_on_rule");
  std::vector<std::vector<double>> out(coeffs.size(), std::vector<double>(rule.size()));

  if (basis.domain() == DomainKind::Cube && rule.cube_layout()) {
    // Cosine synthesis on the rule's grid, then gather the nodes.
    const auto& layout = *rule.cube_layout();
    const auto P = static_cast<std::size_t>(basis.degree_cap()) + 1;
    const auto Q = static_cast<std::size_t>(layout.n) + 1;
    const auto table = chebyshev_cosine_table(P, Q, layout.n);
    std::vector<double> tensor(P * P * P);
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      std::fill(tensor.begin(), tensor.end(), 0.0);
      for (std::size_t l = 0; l < basis.size(); ++l) {
        const auto& idx = basis.index(l);
        tensor[grid_offset(idx, P)] = cube_gamma(idx) * coeffs[e][l];
      }
      const auto values = separable_transform_3d(tensor, P, table, Q);
      for (std::size_t j = 0; j < rule.size(); ++j) {
        out[e][j] = values[grid_offset(layout.index[j], Q)];
      }
    }
    return out;
  }

  std::vector<double> row(basis.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    basis.eval_all(rule.nodes()[j], row);
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      out[e][j] = kernels::dot(coeffs[e].values, row);
    }
  }
  return out;
}

}  // namespace hyperlasso
