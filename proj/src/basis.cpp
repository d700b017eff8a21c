#include "hyperlasso/basis.hpp"

#include "hyperlasso/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hyperlasso {

namespace {

void require_degree(int L, const char* who) {
  if (L < 0) throw InvalidArgument(std::string(who) + ": L must be >= 0");
}

}  // namespace

std::size_t dimension(DomainKind domain, int L) {
  require_degree(L, "dimension");
  const auto l = static_cast<std::size_t>(L);
  switch (domain) {
    case DomainKind::Interval: return l + 1;
    case DomainKind::Disc: return (l + 1) * (l + 2) / 2;
    case DomainKind::Sphere: return (l + 1) * (l + 1);
    case DomainKind::Cube: return (l + 1) * (l + 2) * (l + 3) / 6;
  }
  return 0;
}

void legendre_values(double x, std::span<double> out) {
  if (out.empty()) return;
  // Orthonormal recurrence: p_l = sqrt((2l+1)/2) P_l.
  double prev = 0.0;
  double cur = std::sqrt(0.5);
  out[0] = cur;
  for (std::size_t l = 1; l < out.size(); ++l) {
    const double n = static_cast<double>(l);
    const double a = std::sqrt((4.0 * n * n - 1.0) / (n * n));
    double next = a * x * cur;
    if (l >= 2) next -= std::sqrt((2.0 * n + 1.0) / (2.0 * n - 3.0)) * (n - 1.0) / n * prev;
    prev = cur;
    cur = next;
    out[l] = cur;
  }
}

void chebyshev_values(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 2; k < out.size(); ++k) out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

BasisSet legendre_basis(int L) {
  require_degree(L, "legendre_basis");
  BasisSet b(DomainKind::Interval, L);
  for (int l = 0; l <= L; ++l) {
    b.degree_.push_back(l);
    b.index_.push_back({l, 0, 0});
  }
  return b;
}

BasisSet ridge_basis(int L) {
  require_degree(L, "ridge_basis");
  BasisSet b(DomainKind::Disc, L);
  for (int m = 0; m <= L; ++m) {
    for (int k = 0; k <= m; ++k) {
      const double t = std::numbers::pi * k / (m + 1);
      b.degree_.push_back(m);
      b.index_.push_back({m, k, 0});
      b.direction_.push_back({std::cos(t), std::sin(t)});
    }
  }
  return b;
}

BasisSet spherical_harmonic_basis(int L) {
  require_degree(L, "spherical_harmonic_basis");
  BasisSet b(DomainKind::Sphere, L);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      b.degree_.push_back(l);
      b.index_.push_back({l, m, 0});
    }
  }
  return b;
}

BasisSet chebyshev_product_basis(int L) {
  require_degree(L, "chebyshev_product_basis");
  BasisSet b(DomainKind::Cube, L);
  // Graded, then lexicographic in (l1, l2).
  for (int deg = 0; deg <= L; ++deg) {
    for (int l1 = 0; l1 <= deg; ++l1) {
      for (int l2 = 0; l1 + l2 <= deg; ++l2) {
        b.degree_.push_back(deg);
        b.index_.push_back({l1, l2, deg - l1 - l2});
      }
    }
  }
  return b;
}

BasisSet default_basis(DomainKind domain, int L) {
  switch (domain) {
    case DomainKind::Interval: return legendre_basis(L);
    case DomainKind::Disc: return ridge_basis(L);
    case DomainKind::Sphere: return spherical_harmonic_basis(L);
    case DomainKind::Cube: return chebyshev_product_basis(L);
  }
  throw InvalidArgument("default_basis: unknown domain");
}

std::vector<double> BasisSet::eval_all(const Point& x) const {
  std::vector<double> out(size());
  eval_all(x, out);
  return out;
}

void BasisSet::eval_all(const Point& x, std::span<double> out) const {
  if (out.size() != size()) throw InvalidArgument("eval_all: output length != basis size");
  if (!contains(domain_, x)) {
    throw InvalidArgument("eval_all: point (" + std::to_string(x[0]) + ", " +
                          std::to_string(x[1]) + ", " + std::to_string(x[2]) +
                          ") is outside the " + std::string(to_string(domain_)));
  }
  switch (domain_) {
    case DomainKind::Interval: eval_interval(x[0], out); break;
    case DomainKind::Disc: eval_disc(x, out); break;
    case DomainKind::Sphere: eval_sphere(x, out); break;
    case DomainKind::Cube: eval_cube(x, out); break;
  }
}

void BasisSet::eval_interval(double x, std::span<double> out) const {
  legendre_values(std::clamp(x, -1.0, 1.0), out);
}

void BasisSet::eval_disc(const Point& x, std::span<double> out) const {
  for (std::size_t e = 0; e < out.size(); ++e) {
    const int m = index_[e][0];
    const double t = x[0] * direction_[e][0] + x[1] * direction_[e][1];
    // U_m(t) by U_{j+1} = 2t U_j - U_{j-1}
    double u0 = 1.0;
    double u1 = 2.0 * t;
    if (m == 0) {
      out[e] = u0;
      continue;
    }
    for (int j = 1; j < m; ++j) {
      const double u2 = 2.0 * t * u1 - u0;
      u0 = u1;
      u1 = u2;
    }
    out[e] = u1;
  }
}

// Fully normalised associated Legendre functions
//   Pbar_l^m = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m   (no Condon-Shortley phase)
// by the standard forward recurrences, then
//   Y_l0 = Pbar_l^0, Y_{l,m} = sqrt2 Pbar_l^m cos(m phi), Y_{l,-m} = sqrt2 Pbar_l^m sin(m phi).
void BasisSet::eval_sphere(const Point& x, std::span<double> out) const {
  const int L = degree_cap_;
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  const double z = std::clamp(x[2] / r, -1.0, 1.0);
  const double s = std::hypot(x[0], x[1]) / r;
  const double phi = std::atan2(x[1], x[0]);

  const auto at = [](int l, int m) { return static_cast<std::size_t>(l * l + l + m); };
  const double sqrt2 = std::numbers::sqrt2;

  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);  // Pbar_m^m
  for (int m = 0; m <= L; ++m) {
    if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    const double c = m > 0 ? std::cos(m * phi) : 1.0;
    const double sn = m > 0 ? std::sin(m * phi) : 0.0;
    const auto store = [&](int l, double p) {
      if (m == 0) {
        out[at(l, 0)] = p;
      } else {
        out[at(l, m)] = sqrt2 * p * c;
        out[at(l, -m)] = sqrt2 * p * sn;
      }
    };
    store(m, pmm);
    if (m == L) break;
    double p_prev = pmm;
    double p_cur = std::sqrt(2.0 * m + 3.0) * z * pmm;
    store(m + 1, p_cur);
    for (int l = m + 2; l <= L; ++l) {
      const double ll = l;
      const double mm = m;
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
      const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) /
                                 (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      const double p_next = a * (z * p_cur - b * p_prev);
      p_prev = p_cur;
      p_cur = p_next;
      store(l, p_cur);
    }
  }
}

void BasisSet::eval_cube(const Point& x, std::span<double> out) const {
  const auto n = static_cast<std::size_t>(degree_cap_) + 1;
  // Normalised Chebyshev values per coordinate: T~_0 = 1, T~_k = sqrt2 T_k.
  std::vector<double> t(3 * n);
  for (std::size_t c = 0; c < 3; ++c) {
    const std::span<double> tc(t.data() + c * n, n);
    chebyshev_values(std::clamp(x[c], -1.0, 1.0), tc);
    for (std::size_t k = 1; k < n; ++k) tc[k] *= std::numbers::sqrt2;
  }
  for (std::size_t e = 0; e < out.size(); ++e) {
    const auto& idx = index_[e];
    out[e] = t[static_cast<std::size_t>(idx[0])] * t[n + static_cast<std::size_t>(idx[1])] *
             t[2 * n + static_cast<std::size_t>(idx[2])];
  }
}

}  // namespace hyperlasso
