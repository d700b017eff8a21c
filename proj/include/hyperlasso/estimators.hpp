#pragma once

#include "hyperlasso/basis.hpp"
#include "hyperlasso/quadrature.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace hyperlasso {

/// Expansion coefficients aligned with a BasisSet's element order.
struct CoefficientVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  /// Number of entries that are not exactly zero.
  std::size_t count_nonzero() const noexcept;
  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

/// Positive per-coefficient penalty weights (mu_l for the Lasso, h_l for
/// Tikhonov).
class PenaltyVector {
 public:
  /// Throws InvalidArgument unless every value is > 0 and finite.
  explicit PenaltyVector(std::vector<double> values);
  static PenaltyVector uniform(std::size_t d, double value = 1.0);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// h_l = (1 + l(l+1))^2 on spherical harmonics; a diagonal stand-in for a
/// Laplace-Beltrami weighted penalty. Sphere bases only.
PenaltyVector laplace_beltrami_penalty(const BasisSet& basis);

/// A basis plus coefficients; shares the (immutable) basis.
struct Expansion {
  std::shared_ptr<const BasisSet> basis;
  CoefficientVector coeffs;
};

/// S_k(a) = max(0, a-k) + min(0, a+k). Returns an exact zero when |a| <= k.
double soft_threshold(double a, double k);

/// alpha_l = sum_j w_j p_l(x_j) f_j. Requires exactness >= 2L. Cube rules
/// with a grid layout take the separable cosine-sum route.
CoefficientVector hyper_coefficients(const QuadratureRule& rule, const BasisSet& basis,
                                     std::span<const double> samples);

/// Same sum accumulated node by node; used as the reference for the cube
/// fast path.
CoefficientVector hyper_coefficients_direct(const QuadratureRule& rule, const BasisSet& basis,
                                            std::span<const double> samples);

/// beta_l = S_{lambda mu_l}(alpha_l). Throws InvalidArgument if lambda <= 0.
CoefficientVector lasso_coefficients(const CoefficientVector& alpha, double lambda,
                                     const PenaltyVector& mu);

/// Filter h(t) = 1 on [0,1/2], sin^2(pi t) on [1/2,1], 0 beyond.
double filter_weight(double t);

/// beta_l = h(deg p_l / L) alpha_l. Requires degree_cap >= 1.
CoefficientVector filtered_coefficients(const CoefficientVector& alpha, const BasisSet& basis);

/// beta_l = alpha_l / (1 + lambda h_l): the minimiser of
/// 1/2 ||W^{1/2}(A b - f)||^2 + lambda/2 sum_l h_l b_l^2 when A^T W A = I.
CoefficientVector tikhonov_coefficients(const CoefficientVector& alpha, double lambda,
                                        const PenaltyVector& penalty);

/// max_l |alpha_l|. Below this value (mu = 1) the Lasso keeps at least one
/// coefficient. Throws InvalidArgument on an empty vector.
double lambda_max(const CoefficientVector& alpha);

/// sum_l beta_l p_l(x) at every point. Throws on out-of-domain points.
std::vector<double> evaluate(const Expansion& expansion, std::span<const Point> points);

/// Values of several expansions over the same basis at every node of
/// `rule`; result[e][j]. Cube rules with a grid layout are evaluated by
/// separable cosine synthesis.
std::vector<std::vector<double>> evaluate_on_rule(const BasisSet& basis,
                                                  std::span<const CoefficientVector> coeffs,
                                                  const QuadratureRule& rule);

}  // namespace hyperlasso
