#pragma once

#include "hyperlasso/domain.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

namespace hyperlasso {

class BasisSet;

/// Grid bookkeeping for cube rules: every node sits on the tensor
/// Chebyshev-Lobatto grid {cos(i*pi/n)}^3, i = 0..n.
struct CubeLayout {
  int n = 0;
  std::vector<std::array<int, 3>> index;  // aligned with the rule's nodes
};

/// Counts of cube nodes by how many coordinates sit on the boundary.
struct CubeNodeClasses {
  std::size_t interior = 0;
  std::size_t face = 0;
  std::size_t edge = 0;
  std::size_t vertex = 0;
};

/// Positive-weight rule on one of the four domains, exact for polynomials
/// up to `exactness_degree()`. Immutable once built.
class QuadratureRule {
 public:
  QuadratureRule(DomainKind domain, std::vector<Point> nodes, std::vector<double> weights,
                 int exactness_degree, std::optional<CubeLayout> cube = std::nullopt);

  DomainKind domain() const noexcept { return domain_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Point>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  int exactness_degree() const noexcept { return exactness_degree_; }
  const std::optional<CubeLayout>& cube_layout() const noexcept { return cube_; }

 private:
  DomainKind domain_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  int exactness_degree_;
  std::optional<CubeLayout> cube_;
};

/// n-point Gauss-Legendre rule on [-1,1] (weight 1), exact to degree 2n-1.
/// Nodes strictly increasing.
QuadratureRule gauss_legendre_rule(int n);

/// Gauss-Legendre radial rule (N+1 points on [0,1]) times a (2N+1)-point
/// trapezoidal rule in angle. Exact to degree 2N for the measure dx/pi.
QuadratureRule disc_rule(int N);

/// (L+1)-point Gauss-Legendre in z times (2L+1) equispaced azimuths.
/// Exact to degree 2L for surface measure.
QuadratureRule sphere_product_rule(int L);

/// Reads an equal-weight point set from a text file and verifies that it
/// integrates every spherical harmonic of degree <= t. `tol` bounds the
/// absolute residual per harmonic.
QuadratureRule load_t_design(const std::filesystem::path& path, int t, double tol = 1e-8);

/// Cubature on [-1,1]^3 for the product Chebyshev measure: the even-even-even
/// and odd-odd-odd sub-lattices of the (L+2)^3 Chebyshev-Lobatto grid.
QuadratureRule cube_rule(int L);

CubeNodeClasses classify_cube_nodes(const QuadratureRule& rule);

using PointFunction = std::function<double(const Point&)>;

/// sum_j w_j f(x_j). Throws EvaluationError if f is non-finite at a node.
double integrate(const QuadratureRule& rule, const PointFunction& f);

struct ExactnessReport {
  double max_deviation = 0.0;  // max_{i,k} |<p_i,p_k>_N - delta_ik|
  std::size_t worst_row = 0;
  std::size_t worst_col = 0;
  bool passed = false;
};

/// Computes the discrete Gram matrix of `basis` under `rule` and compares
/// it with the identity. Requires 2 * degree_cap <= exactness_degree.
ExactnessReport verify_exactness(const QuadratureRule& rule, const BasisSet& basis,
                                 double tol = 1e-8);

/// Dense discrete Gram matrix (row-major, d*d). Practical for d up to a few
/// thousand; verify_exactness uses a structured route on the cube.
std::vector<double> gram_matrix(const QuadratureRule& rule, const BasisSet& basis);

}  // namespace hyperlasso
