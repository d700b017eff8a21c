#pragma once

#include <array>
#include <numbers>
#include <string>
#include <string_view>

namespace hyperlasso {

enum class DomainKind { Interval, Disc, Sphere, Cube };

/// A point in the ambient space; unused trailing coordinates are zero.
using Point = std::array<double, 3>;

/// Tolerance for unit-norm and membership checks. Boundary points are valid.
inline constexpr double kMembershipTol = 1e-12;

/// Total measure of each domain under the measure its basis is
/// orthonormal for: dx on [-1,1], dx/pi on the disc, surface area on the
/// sphere, the normalised product Chebyshev weight on the cube.
constexpr double volume(DomainKind kind) noexcept {
  switch (kind) {
    case DomainKind::Interval: return 2.0;
    case DomainKind::Disc: return 1.0;
    case DomainKind::Sphere: return 4.0 * std::numbers::pi;
    case DomainKind::Cube: return 1.0;
  }
  return 0.0;
}

/// Number of coordinates a point of this domain uses.
constexpr int ambient_dim(DomainKind kind) noexcept {
  switch (kind) {
    case DomainKind::Interval: return 1;
    case DomainKind::Disc: return 2;
    case DomainKind::Sphere: return 3;
    case DomainKind::Cube: return 3;
  }
  return 0;
}

std::string_view to_string(DomainKind kind) noexcept;
/// Accepts "interval", "disc", "sphere", "cube". Throws InvalidArgument.
DomainKind parse_domain(std::string_view name);

/// True when `x` lies in the domain within kMembershipTol.
bool contains(DomainKind kind, const Point& x) noexcept;

}  // namespace hyperlasso
