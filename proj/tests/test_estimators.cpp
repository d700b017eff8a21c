#include "doctest.h"

#include "hyperlasso/analysis.hpp"
#include "hyperlasso/basis.hpp"
#include "hyperlasso/error.hpp"
#include "hyperlasso/estimators.hpp"
#include "hyperlasso/quadrature.hpp"

#include <cmath>
#include <memory>
#include <random>

using namespace hyperlasso;

namespace {

std::vector<double> sample(const QuadratureRule& rule, const PointFunction& f) {
  std::vector<double> v(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) v[j] = f(rule.nodes()[j]);
  return v;
}

// Dense solve of a small symmetric positive definite system by Gaussian elimination.
std::vector<double> solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
    }
    for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

}  // namespace

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-1.0, 1.0) == 0.0);
  CHECK(soft_threshold(1.0, 1.0) == 0.0);
  CHECK(soft_threshold(2.5, 0.0) == 2.5);
  CHECK(!std::signbit(soft_threshold(-0.5, 1.0)));
  CHECK_THROWS_AS(soft_threshold(1.0, -0.1), InvalidArgument);
}

TEST_CASE("interval L=1 oracle") {
  const auto rule = gauss_legendre_rule(2);
  const auto basis = std::make_shared<const BasisSet>(legendre_basis(1));
  const auto f = sample(rule, [](const Point& p) { return p[0]; });
  const auto alpha = hyper_coefficients(rule, *basis, f);
  CHECK(std::abs(alpha[0]) < 1e-15);
  CHECK(alpha[1] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));

  const auto beta = lasso_coefficients(alpha, 0.5, PenaltyVector::uniform(2));
  CHECK(beta[0] == 0.0);
  CHECK(beta[1] == doctest::Approx(0.31650).epsilon(1e-4));
  CHECK(beta.count_nonzero() == 1u);

  const std::vector<Point> at{{1.0, 0, 0}};
  const auto v = evaluate(Expansion{basis, beta}, at);
  CHECK(v[0] == doctest::Approx((std::sqrt(2.0 / 3.0) - 0.5) * std::sqrt(1.5)).epsilon(1e-13));
  CHECK(v[0] == doctest::Approx(0.38763).epsilon(1e-4));

  const auto none = lasso_coefficients(alpha, lambda_max(alpha), PenaltyVector::uniform(2));
  CHECK(none.count_nonzero() == 0u);
  CHECK(lasso_coefficients(alpha, 0.99 * lambda_max(alpha), PenaltyVector::uniform(2))
            .count_nonzero() >= 1u);
}

TEST_CASE("lasso argument checks") {
  const CoefficientVector alpha{{1.0, 2.0}};
  CHECK_THROWS_AS(lasso_coefficients(alpha, 0.0, PenaltyVector::uniform(2)), InvalidArgument);
  CHECK_THROWS_AS(lasso_coefficients(alpha, -1.0, PenaltyVector::uniform(2)), InvalidArgument);
  CHECK_THROWS_AS(lasso_coefficients(alpha, 1.0, PenaltyVector::uniform(3)), InvalidArgument);
  CHECK_THROWS_AS(PenaltyVector({1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(lambda_max(CoefficientVector{}), InvalidArgument);
}

TEST_CASE("lasso minimises the discrete objective") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto rule = gauss_legendre_rule(6);
  const auto basis = legendre_basis(4);
  const auto f = sample(rule, [](const Point& p) { return std::exp(p[0]) * std::cos(3 * p[0]); });
  const auto alpha = hyper_coefficients(rule, basis, f);
  std::vector<std::vector<double>> phi(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) phi[j] = basis.eval_all(rule.nodes()[j]);

  const auto objective = [&](const std::vector<double>& b, double lambda, const PenaltyVector& mu) {
    double fit = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      double p = 0.0;
      for (std::size_t l = 0; l < b.size(); ++l) p += b[l] * phi[j][l];
      fit += rule.weights()[j] * (p - f[j]) * (p - f[j]);
    }
    double pen = 0.0;
    for (std::size_t l = 0; l < b.size(); ++l) pen += mu[l] * std::abs(b[l]);
    return 0.5 * fit + lambda * pen;
  };

  for (double lambda : {0.01, 0.1, 0.4}) {
    const PenaltyVector mu({1.0, 0.5, 2.0, 1.0, 0.25});
    const auto beta = lasso_coefficients(alpha, lambda, mu);
    CHECK(satisfies_kkt(alpha, beta, lambda, mu));
    const double best = objective(beta.values, lambda, mu);
    for (int k = 0; k < 500; ++k) {
      auto b = beta.values;
      for (auto& x : b) x += 0.05 * u(gen);
      CHECK(objective(b, lambda, mu) >= best - 1e-14);
    }
  }
}

TEST_CASE("tikhonov matches a dense regularised least-squares solve") {
  const auto rule = gauss_legendre_rule(5);
  const auto basis = legendre_basis(4);
  const auto f = sample(rule, [](const Point& p) { return 1.0 / (1.0 + 4 * p[0] * p[0]); });
  const auto alpha = hyper_coefficients(rule, basis, f);
  const PenaltyVector h({1.0, 2.0, 3.0, 4.0, 5.0});
  const double lambda = 0.3;

  // (A^T W A + lambda H) beta = A^T W f
  const std::size_t d = basis.size();
  auto lhs = gram_matrix(rule, basis);
  for (std::size_t l = 0; l < d; ++l) lhs[l * d + l] += lambda * h[l];
  const auto dense = solve(lhs, alpha.values);
  const auto beta = tikhonov_coefficients(alpha, lambda, h);
  for (std::size_t l = 0; l < d; ++l) CHECK(beta[l] == doctest::Approx(dense[l]).epsilon(1e-12));

  CHECK(tikhonov_coefficients(alpha, 0.0, h) == alpha);
  CHECK_THROWS_AS(tikhonov_coefficients(alpha, -1.0, h), InvalidArgument);
}

TEST_CASE("laplace-beltrami penalty grows with degree") {
  const auto p = laplace_beltrami_penalty(spherical_harmonic_basis(3));
  CHECK(p.size() == 16u);
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 9.0);
  CHECK(p[4] == 49.0);
  CHECK_THROWS_AS(laplace_beltrami_penalty(legendre_basis(3)), InvalidArgument);
}

TEST_CASE("filter weight and filtered coefficients") {
  CHECK(filter_weight(0.0) == 1.0);
  CHECK(filter_weight(0.5) == 1.0);
  CHECK(filter_weight(0.75) == doctest::Approx(0.5));
  CHECK(filter_weight(1.0) == 0.0);
  CHECK(filter_weight(2.0) == 0.0);
  const auto basis = legendre_basis(4);
  const CoefficientVector alpha{{1, 1, 1, 1, 1}};
  const auto beta = filtered_coefficients(alpha, basis);
  CHECK(beta[2] == 1.0);
  CHECK(beta[3] == doctest::Approx(0.5));
  CHECK(beta[4] == 0.0);
  CHECK_THROWS_AS(filtered_coefficients(CoefficientVector{{1.0}}, legendre_basis(0)),
                  InvalidArgument);
}

TEST_CASE("hyperinterpolation reproduces polynomials on every domain") {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> n;
  struct Case {
    QuadratureRule rule;
    BasisSet basis;
  };
  const std::vector<Case> cases{{gauss_legendre_rule(13), legendre_basis(12)},
                                {disc_rule(8), ridge_basis(8)},
                                {sphere_product_rule(7), spherical_harmonic_basis(7)},
                                {cube_rule(6), chebyshev_product_basis(6)}};
  for (const auto& c : cases) {
    CAPTURE(to_string(c.basis.domain()));
    std::vector<double> coeffs(c.basis.size());
    for (auto& x : coeffs) x = n(gen);
    const auto basis = std::make_shared<const BasisSet>(c.basis);
    const auto values = evaluate(Expansion{basis, {coeffs}}, c.rule.nodes());
    const auto alpha = hyper_coefficients(c.rule, c.basis, values);
    for (std::size_t l = 0; l < coeffs.size(); ++l) CHECK(std::abs(alpha[l] - coeffs[l]) < 1e-11);
  }
}

TEST_CASE("cube fast paths agree with direct summation") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int L : {1, 2, 5, 9}) {
    CAPTURE(L);
    const auto rule = cube_rule(L);
    const auto basis = chebyshev_product_basis(L);
    std::vector<double> f(rule.size());
    for (auto& x : f) x = u(gen);
    const auto fast = hyper_coefficients(rule, basis, f);
    const auto slow = hyper_coefficients_direct(rule, basis, f);
    for (std::size_t l = 0; l < basis.size(); ++l) CHECK(std::abs(fast[l] - slow[l]) < 1e-13);

    const auto shared = std::make_shared<const BasisSet>(basis);
    const std::vector<CoefficientVector> fits{fast, lasso_coefficients(fast, 0.05,
                                                                       PenaltyVector::uniform(basis.size()))};
    const auto synth = evaluate_on_rule(basis, fits, rule);
    for (std::size_t k = 0; k < fits.size(); ++k) {
      const auto direct = evaluate(Expansion{shared, fits[k]}, rule.nodes());
      for (std::size_t j = 0; j < rule.size(); ++j) CHECK(std::abs(synth[k][j] - direct[j]) < 1e-12);
    }
  }
}

TEST_CASE("hyper_coefficients checks its inputs") {
  const auto rule = gauss_legendre_rule(4);
  const std::vector<double> f(4, 1.0);
  CHECK_THROWS_AS(hyper_coefficients(rule, legendre_basis(3), std::vector<double>(3, 1.0)),
                  InvalidArgument);
  CHECK_THROWS_AS(hyper_coefficients(rule, ridge_basis(1), f), InvalidArgument);
}

TEST_CASE("hyperinterpolating a basis element gives a unit vector") {
  const auto rule = gauss_legendre_rule(8);
  const auto basis = legendre_basis(5);
  const auto f = sample(rule, [&](const Point& p) { return basis.eval_all(p)[3]; });
  const auto alpha = hyper_coefficients(rule, basis, f);
  for (std::size_t l = 0; l < basis.size(); ++l) {
    CHECK(std::abs(alpha[l] - (l == 3 ? 1.0 : 0.0)) < 1e-14);
  }
  const auto zero = hyper_coefficients(rule, basis, std::vector<double>(rule.size(), 0.0));
  CHECK(zero.count_nonzero() == 0u);
}
