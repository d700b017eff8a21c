#pragma once

#include "hyperlasso/domain.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace hyperlasso {

/// dim P_L on each domain: L+1, (L+1)(L+2)/2, (L+1)^2, (L+1)(L+2)(L+3)/6.
std::size_t dimension(DomainKind domain, int L);

/// Orthonormal polynomial basis of P_L on one domain.
///
/// Element ordering is graded by total degree and fixed per domain:
///  - interval: p_l, l = 0..L
///  - disc:     ridge element (m, k), m = 0..L, k = 0..m
///  - sphere:   real harmonic (l, m), l = 0..L, m = -l..l
///  - cube:     (l1, l2, l3) sorted by (l1+l2+l3, l1, l2)
/// `index(i)` returns that tuple (unused slots zero).
class BasisSet {
 public:
  DomainKind domain() const noexcept { return domain_; }
  int degree_cap() const noexcept { return degree_cap_; }
  std::size_t size() const noexcept { return degree_.size(); }
  std::span<const int> element_degree() const noexcept { return degree_; }
  const std::array<int, 3>& index(std::size_t i) const { return index_.at(i); }

  /// Writes (p_1(x), ..., p_d(x)) into `out`. Throws InvalidArgument if x is
  /// outside the domain or `out` has the wrong length.
  void eval_all(const Point& x, std::span<double> out) const;
  std::vector<double> eval_all(const Point& x) const;

  friend BasisSet legendre_basis(int L);
  friend BasisSet ridge_basis(int L);
  friend BasisSet spherical_harmonic_basis(int L);
  friend BasisSet chebyshev_product_basis(int L);

 private:
  BasisSet(DomainKind domain, int L) : domain_(domain), degree_cap_(L) {}

  void eval_interval(double x, std::span<double> out) const;
  void eval_disc(const Point& x, std::span<double> out) const;
  void eval_sphere(const Point& x, std::span<double> out) const;
  void eval_cube(const Point& x, std::span<double> out) const;

  DomainKind domain_;
  int degree_cap_;
  std::vector<int> degree_;
  std::vector<std::array<int, 3>> index_;
  // Ridge directions (cos, sin) per element, disc only.
  std::vector<std::array<double, 2>> direction_;
};

/// p_l = sqrt((2l+1)/2) P_l on [-1,1].
BasisSet legendre_basis(int L);
/// Logan-Shepp ridge polynomials U_m(x1 cos t_k + x2 sin t_k), t_k = k*pi/(m+1),
/// orthonormal for dx/pi on the unit disc.
BasisSet ridge_basis(int L);
/// Real spherical harmonics, orthonormal for surface measure.
BasisSet spherical_harmonic_basis(int L);
/// Products of normalised Chebyshev polynomials, total degree <= L.
BasisSet chebyshev_product_basis(int L);

/// Basis used for a domain in the experiments.
BasisSet default_basis(DomainKind domain, int L);

/// Orthonormal Legendre values p_0..p_L at x (no domain check).
void legendre_values(double x, std::span<double> out);
/// Chebyshev values T_0..T_K at x via the three-term recurrence.
void chebyshev_values(double x, std::span<double> out);

}  // namespace hyperlasso
