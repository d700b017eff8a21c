#pragma once

#include "hyperlasso/domain.hpp"
#include "hyperlasso/quadrature.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlasso {

/// Scale of the normalised Wendland function: 9 Gamma(5/2) / (2 Gamma(3)).
double wendland_delta();
/// Original Wendland function (max(1-r,0))^6 (35r^2 + 18r + 3) / 3.
double wendland_phi(double r);

/// Evaluates a named test function:
///  exp_sq        exp(-x^2) on [-1,1]
///  disc_poisson  (1 - (x1^2 + x2^2)) exp(x1 cos x2) on the disc
///  wendland_caps sum of six normalised Wendland caps at the axis poles
///  cube_exp      exp(-1/(x^2+y^2+z^2)) on the cube, 0 at the origin
/// Throws InvalidArgument for unknown names or points outside the domain.
double built_in_function(std::string_view name, const Point& x);

/// Domain a built-in function lives on.
DomainKind built_in_domain(std::string_view name);

/// Analytic upper bound on |f| over its domain.
double built_in_sup_norm(std::string_view name);

bool is_built_in(std::string_view name) noexcept;

}  // namespace hyperlasso
