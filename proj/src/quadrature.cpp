#include "hyperlasso/quadrature.hpp"

#include "hyperlasso/basis.hpp"
#include "hyperlasso/cube_transform.hpp"
#include "hyperlasso/error.hpp"
#include "hyperlasso/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace hyperlasso {

namespace {

constexpr double kPi = std::numbers::pi;

struct LineRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Newton iteration on P_n using the three-term recurrence; the starting
// guesses cos(pi (i + 3/4) / (n + 1/2)) are within the basin for every root.
LineRule gauss_legendre_line(int n) {
  LineRule r;
  r.x.assign(static_cast<std::size_t>(n), 0.0);
  r.w.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(z), p0 = P_{n-1}(z)
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) <= 1e-15) break;
    }
    // Derivative at the converged root.
    {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    if (n % 2 == 1 && i == half - 1) z = 0.0;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    r.x[lo] = -z;
    r.x[hi] = z;
    r.w[lo] = w;
    r.w[hi] = w;
  }
  return r;
}

void require_positive(int n, const char* who) {
  if (n < 1) throw InvalidArgument(std::string(who) + ": parameter must be >= 1");
}

}  // namespace

QuadratureRule::QuadratureRule(DomainKind domain, std::vector<Point> nodes,
                               std::vector<double> weights, int exactness_degree,
                               std::optional<CubeLayout> cube)
    : domain_(domain),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)),
      exactness_degree_(exactness_degree),
      cube_(std::move(cube)) {
  if (nodes_.size() != weights_.size()) {
    throw InvalidArgument("QuadratureRule: node/weight count mismatch");
  }
  if (nodes_.empty()) throw InvalidArgument("QuadratureRule: empty rule");
  if (exactness_degree_ < 0) throw InvalidArgument("QuadratureRule: negative exactness degree");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("QuadratureRule: weights must be positive and finite");
    }
  }
  if (cube_ && cube_->index.size() != nodes_.size()) {
    throw InvalidArgument("QuadratureRule: cube layout does not match nodes");
  }
}

QuadratureRule gauss_legendre_rule(int n) {
  require_positive(n, "gauss_legendre_rule");
  auto line = gauss_legendre_line(n);
  std::vector<Point> nodes;
  nodes.reserve(line.x.size());
  for (double x : line.x) nodes.push_back({x, 0.0, 0.0});
  return QuadratureRule(DomainKind::Interval, std::move(nodes), std::move(line.w), 2 * n - 1);
}

QuadratureRule disc_rule(int N) {
  require_positive(N, "disc_rule");
  const auto line = gauss_legendre_line(N + 1);
  const int nt = 2 * N + 1;
  std::vector<Point> nodes;
  std::vector<double> weights;
  nodes.reserve(line.x.size() * static_cast<std::size_t>(nt));
  weights.reserve(nodes.capacity());
  for (std::size_t j = 0; j < line.x.size(); ++j) {
    // [-1,1] -> [0,1]
    const double r = 0.5 * (line.x[j] + 1.0);
    const double wr = 0.5 * line.w[j];
    for (int m = 0; m < nt; ++m) {
      const double theta = 2.0 * kPi * m / nt;
      nodes.push_back({r * std::cos(theta), r * std::sin(theta), 0.0});
      weights.push_back(wr * (2.0 / nt) * r);
    }
  }
  return QuadratureRule(DomainKind::Disc, std::move(nodes), std::move(weights), 2 * N);
}

QuadratureRule sphere_product_rule(int L) {
  if (L < 0) throw InvalidArgument("sphere_product_rule: L must be >= 0");
  const auto line = gauss_legendre_line(L + 1);
  const int nphi = 2 * L + 1;
  std::vector<Point> nodes;
  std::vector<double> weights;
  for (std::size_t j = 0; j < line.x.size(); ++j) {
    const double z = line.x[j];
    const double s = std::sqrt((1.0 - z) * (1.0 + z));
    for (int m = 0; m < nphi; ++m) {
      const double phi = 2.0 * kPi * m / nphi;
      nodes.push_back({s * std::cos(phi), s * std::sin(phi), z});
      weights.push_back(line.w[j] * 2.0 * kPi / nphi);
    }
  }
  return QuadratureRule(DomainKind::Sphere, std::move(nodes), std::move(weights), 2 * L);
}

QuadratureRule load_t_design(const std::filesystem::path& path, int t, double tol) {
  if (t < 0) throw InvalidArgument("load_t_design: t must be >= 0");
  std::ifstream in(path);
  if (!in) throw FileError("cannot open t-design file '" + path.string() + "'");

  std::vector<Point> nodes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    Point p{};
    if (!(ss >> p[0] >> p[1] >> p[2])) {
      throw ParseError("t-design: expected three coordinates", lineno);
    }
    std::string extra;
    if (ss >> extra) throw ParseError("t-design: trailing token '" + extra + "'", lineno);
    const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (!std::isfinite(r) || std::abs(r - 1.0) > 1e-8) {
      throw ValidationError("t-design: point on line " + std::to_string(lineno) +
                            " is not on the unit sphere (norm " + std::to_string(r) + ")");
    }
    for (double& c : p) c /= r;
    nodes.push_back(p);
  }
  if (nodes.empty()) throw ValidationError("t-design: file contains no points");

  const double w = 4.0 * kPi / static_cast<double>(nodes.size());
  std::vector<double> weights(nodes.size(), w);
  QuadratureRule rule(DomainKind::Sphere, std::move(nodes), std::move(weights), t);

  // Integrate every harmonic of degree <= t: only Y_00 has a non-zero mean.
  const auto basis = spherical_harmonic_basis(t);
  std::vector<double> sums(basis.size(), 0.0);
  std::vector<double> row(basis.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    basis.eval_all(rule.nodes()[j], row);
    kernels::axpy(rule.weights()[j], row, sums);
  }
  sums[0] -= std::sqrt(4.0 * kPi);
  std::size_t worst = 0;
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (std::abs(sums[i]) > std::abs(sums[worst])) worst = i;
  }
  const double residual = std::abs(sums[worst]);
  if (residual > tol) {
    const auto& idx = basis.index(worst);
    throw ExactnessError("t-design is not exact to degree " + std::to_string(t) +
                             ": worst harmonic (l=" + std::to_string(idx[0]) +
                             ", m=" + std::to_string(idx[1]) +
                             ") residual " + std::to_string(residual),
                         residual);
  }
  return rule;
}

QuadratureRule cube_rule(int L) {
  require_positive(L, "cube_rule");
  const int n = L + 1;
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) grid[static_cast<std::size_t>(i)] = std::cos(kPi * i / n);

  const double base = 4.0 / (static_cast<double>(n) * n * n);
  CubeLayout layout;
  layout.n = n;
  std::vector<Point> nodes;
  std::vector<double> weights;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if ((j - i) % 2 != 0) continue;
      for (int k = 0; k <= n; ++k) {
        if ((k - i) % 2 != 0) continue;
        int boundary = 0;
        for (int c : {i, j, k}) boundary += (c == 0 || c == n) ? 1 : 0;
        nodes.push_back({grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(j)],
                         grid[static_cast<std::size_t>(k)]});
        weights.push_back(base / static_cast<double>(1 << boundary));
        layout.index.push_back({i, j, k});
      }
    }
  }
  return QuadratureRule(DomainKind::Cube, std::move(nodes), std::move(weights), 2 * L,
                        std::move(layout));
}

CubeNodeClasses classify_cube_nodes(const QuadratureRule& rule) {
  if (!rule.cube_layout()) throw InvalidArgument("classify_cube_nodes: not a cube grid rule");
  const auto& layout = *rule.cube_layout();
  CubeNodeClasses c;
  for (const auto& idx : layout.index) {
    int boundary = 0;
    for (int v : idx) boundary += (v == 0 || v == layout.n) ? 1 : 0;
    switch (boundary) {
      case 0: ++c.interior; break;
      case 1: ++c.face; break;
      case 2: ++c.edge; break;
      default: ++c.vertex; break;
    }
  }
  return c;
}

double integrate(const QuadratureRule& rule, const PointFunction& f) {
  double acc = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const double v = f(rule.nodes()[j]);
    if (!std::isfinite(v)) {
      throw EvaluationError("integrand is not finite at node " + std::to_string(j));
    }
    acc += rule.weights()[j] * v;
  }
  return acc;
}

std::vector<double> gram_matrix(const QuadratureRule& rule, const BasisSet& basis) {
  if (rule.domain() != basis.domain()) throw InvalidArgument("gram_matrix: domain mismatch");
  const std::size_t d = basis.size();
  const std::size_t N = rule.size();
  constexpr std::size_t kBlock = 512;

  std::vector<double> gram(d * d, 0.0);
  // Basis values for a block of nodes, one row per basis element.
  std::vector<double> vals(d * kBlock);
  std::vector<double> wvals(d * kBlock);
  std::vector<double> row(d);
  for (std::size_t start = 0; start < N; start += kBlock) {
    const std::size_t nb = std::min(kBlock, N - start);
    for (std::size_t j = 0; j < nb; ++j) {
      basis.eval_all(rule.nodes()[start + j], row);
      const double w = rule.weights()[start + j];
      for (std::size_t i = 0; i < d; ++i) {
        vals[i * kBlock + j] = row[i];
        wvals[i * kBlock + j] = w * row[i];
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      const std::span<const double> wi(wvals.data() + i * kBlock, nb);
      for (std::size_t k = i; k < d; ++k) {
        const std::span<const double> vk(vals.data() + k * kBlock, nb);
        gram[i * d + k] += kernels::dot(wi, vk);
      }
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < i; ++k) gram[i * d + k] = gram[k * d + i];
  }
  return gram;
}

namespace {

// Product Chebyshev basis on a cube grid rule. With
// M[a][b][c] = sum_x w_x T_a(x1) T_b(x2) T_c(x3) for a, b, c <= 2L,
// T_a T_b = (T_{a+b} + T_{|a-b|}) / 2 turns every Gram entry into eight
// lookups, so the d x d matrix is scanned without forming A.
ExactnessReport cube_gram_deviation(const QuadratureRule& rule, const BasisSet& basis,
                                    double tol) {
  const auto& layout = *rule.cube_layout();
  const auto P = static_cast<std::size_t>(layout.n) + 1;
  std::vector<double> wgrid(P * P * P, 0.0);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const auto& idx = layout.index[j];
    wgrid[(static_cast<std::size_t>(idx[0]) * P + static_cast<std::size_t>(idx[1])) * P +
          static_cast<std::size_t>(idx[2])] = rule.weights()[j];
  }
  const auto K = static_cast<std::size_t>(2 * basis.degree_cap()) + 1;
  const auto table = chebyshev_cosine_table(P, K, layout.n);
  const auto moments = separable_transform_3d(wgrid, P, table, K);

  const std::size_t d = basis.size();
  std::vector<double> gamma(d);
  for (std::size_t i = 0; i < d; ++i) {
    double g = 1.0;
    for (int v : basis.index(i)) g *= v > 0 ? std::numbers::sqrt2 : 1.0;
    gamma[i] = g;
  }

  ExactnessReport report;
  const auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
    return moments[(a * K + b) * K + c];
  };
  for (std::size_t i = 0; i < d; ++i) {
    const auto& a = basis.index(i);
    for (std::size_t k = i; k < d; ++k) {
      const auto& b = basis.index(k);
      std::size_t sum[3][2];
      for (int s = 0; s < 3; ++s) {
        sum[s][0] = static_cast<std::size_t>(a[s] + b[s]);
        sum[s][1] = static_cast<std::size_t>(std::abs(a[s] - b[s]));
      }
      double acc = 0.0;
      for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
          acc += at(sum[0][u], sum[1][v], sum[2][0]) + at(sum[0][u], sum[1][v], sum[2][1]);
        }
      }
      const double entry = 0.125 * gamma[i] * gamma[k] * acc;
      const double dev = std::abs(entry - (i == k ? 1.0 : 0.0));
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_row = i;
        report.worst_col = k;
      }
    }
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

}  // namespace

ExactnessReport verify_exactness(const QuadratureRule& rule, const BasisSet& basis, double tol) {
  if (rule.domain() != basis.domain()) {
    throw InvalidArgument("verify_exactness: rule and basis live on different domains");
  }
  if (2 * basis.degree_cap() > rule.exactness_degree()) {
    throw InvalidArgument("verify_exactness: rule exact to degree " +
                          std::to_string(rule.exactness_degree()) +
                          " cannot certify a Gram matrix of degree " +
                          std::to_string(2 * basis.degree_cap()));
  }
  if (basis.domain() == DomainKind::Cube && rule.cube_layout()) {
    return cube_gram_deviation(rule, basis, tol);
  }
  const auto gram = gram_matrix(rule, basis);
  const std::size_t d = basis.size();
  ExactnessReport report;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = i; k < d; ++k) {
      const double dev = std::abs(gram[i * d + k] - (i == k ? 1.0 : 0.0));
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_row = i;
        report.worst_col = k;
      }
    }
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

}  // namespace hyperlasso
