#include "hyperlasso/domain.hpp"
#include "hyperlasso/error.hpp"

#include <cmath>
#include <string>

namespace hyperlasso {

std::string_view to_string(DomainKind kind) noexcept {
  switch (kind) {
    case DomainKind::Interval: return "interval";
    case DomainKind::Disc: return "disc";
    case DomainKind::Sphere: return "sphere";
    case DomainKind::Cube: return "cube";
  }
  return "unknown";
}

DomainKind parse_domain(std::string_view name) {
  if (name == "interval") return DomainKind::Interval;
  if (name == "disc") return DomainKind::Disc;
  if (name == "sphere") return DomainKind::Sphere;
  if (name == "cube") return DomainKind::Cube;
  throw InvalidArgument("unknown domain '" + std::string(name) + "'");
}

bool contains(DomainKind kind, const Point& x) noexcept {
  const double lim = 1.0 + kMembershipTol;
  switch (kind) {
    case DomainKind::Interval:
      return std::isfinite(x[0]) && std::abs(x[0]) <= lim;
    case DomainKind::Disc:
      return std::isfinite(x[0]) && std::isfinite(x[1]) &&
             x[0] * x[0] + x[1] * x[1] <= 1.0 + 2.0 * kMembershipTol;
    case DomainKind::Sphere: {
      const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      return std::isfinite(r) && std::abs(r - 1.0) <= kMembershipTol;
    }
    case DomainKind::Cube:
      return std::abs(x[0]) <= lim && std::abs(x[1]) <= lim && std::abs(x[2]) <= lim;
  }
  return false;
}

}  // namespace hyperlasso
