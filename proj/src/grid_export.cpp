#include "hyperlasso/grid_export.hpp"

#include "hyperlasso/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

namespace hyperlasso {

namespace {

int parse_count(std::string_view s, std::string_view spec) {
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidArgument("grid spec '" + std::string(spec) + "': bad count '" + std::string(s) + "'");
  }
  if (v < 1) throw InvalidArgument("grid spec '" + std::string(spec) + "': count must be >= 1");
  return v;
}

std::pair<int, int> parse_pair(std::string_view s, std::string_view spec) {
  const auto x = s.find('x');
  if (x == std::string_view::npos) {
    throw InvalidArgument("grid spec '" + std::string(spec) + "': expected <a>x<b>");
  }
  return {parse_count(s.substr(0, x), spec), parse_count(s.substr(x + 1), spec)};
}

// Points on [-1,1] including both ends.
double lin(int i, int n) { return n == 1 ? 0.0 : -1.0 + 2.0 * i / (n - 1); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

GridSpec parse_grid_spec(DomainKind domain, std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("grid spec '" + std::string(spec) + "': expected <kind>:<size>");
  }
  const auto head = spec.substr(0, colon);
  const auto tail = spec.substr(colon + 1);
  GridSpec g;
  g.domain = domain;
  const double pi = std::numbers::pi;

  switch (domain) {
    case DomainKind::Interval: {
      if (head != "uniform") throw InvalidArgument("interval grids use 'uniform:<n>'");
      const int n = parse_count(tail, spec);
      for (int i = 0; i < n; ++i) g.points.push_back({lin(i, n), 0.0, 0.0});
      g.label = "uniform";
      break;
    }
    case DomainKind::Disc: {
      if (head != "polar") throw InvalidArgument("disc grids use 'polar:<nr>x<nt>'");
      const auto [nr, nt] = parse_pair(tail, spec);
      g.points.push_back({0.0, 0.0, 0.0});
      for (int i = 1; i <= nr; ++i) {
        const double r = static_cast<double>(i) / nr;
        for (int k = 0; k < nt; ++k) {
          const double t = 2.0 * pi * k / nt;
          g.points.push_back({r * std::cos(t), r * std::sin(t), 0.0});
        }
      }
      g.label = "polar";
      break;
    }
    case DomainKind::Sphere: {
      if (head != "latlon") throw InvalidArgument("sphere grids use 'latlon:<nlat>x<nlon>'");
      const auto [nlat, nlon] = parse_pair(tail, spec);
      for (int i = 0; i < nlat; ++i) {
        const double theta = nlat == 1 ? pi / 2 : pi * i / (nlat - 1);
        for (int k = 0; k < nlon; ++k) {
          const double phi = 2.0 * pi * k / nlon;
          g.points.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                              std::cos(theta)});
        }
      }
      g.label = "latlon";
      break;
    }
    case DomainKind::Cube: {
      const auto eq = head.find('=');
      if (eq != 1 || (head[0] != 'x' && head[0] != 'y' && head[0] != 'z')) {
        throw InvalidArgument("cube grids use '<x|y|z>=<value>:<n>'");
      }
      double value = 0.0;
      try {
        value = std::stod(std::string(head.substr(2)));
      } catch (const std::exception&) {
        throw InvalidArgument("grid spec '" + std::string(spec) + "': bad slice value");
      }
      if (!(value >= -1.0 && value <= 1.0)) {
        throw InvalidArgument("grid spec '" + std::string(spec) + "': slice outside [-1,1]");
      }
      const int n = parse_count(tail, spec);
      const int axis = head[0] - 'x';
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          Point p{};
          p[static_cast<std::size_t>(axis)] = value;
          p[static_cast<std::size_t>((axis + 1) % 3)] = lin(i, n);
          p[static_cast<std::size_t>((axis + 2) % 3)] = lin(k, n);
          g.points.push_back(p);
        }
      }
      g.label = std::string(1, head[0]) + "=" + fmt(value);
      break;
    }
  }
  return g;
}

std::string format_grid_csv(const GridSpec& grid, const Expansion& expansion,
                            const PointFunction& truth) {
  const auto approx = evaluate(expansion, grid.points);
  const int dim = ambient_dim(grid.domain);
  std::ostringstream out;
  static constexpr const char* names[] = {"x1", "x2", "x3"};
  for (int c = 0; c < dim; ++c) out << names[c] << ',';
  out << "approx,true,error\n";
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double t = truth(grid.points[i]);
    for (int c = 0; c < dim; ++c) out << fmt(grid.points[i][static_cast<std::size_t>(c)]) << ',';
    out << fmt(approx[i]) << ',' << fmt(t) << ',' << fmt(approx[i] - t) << '\n';
  }
  return out.str();
}

void export_grid(const GridSpec& grid, const Expansion& expansion, const PointFunction& truth,
                 const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw FileError("cannot write " + file.string());
  out << format_grid_csv(grid, expansion, truth);
}

}  // namespace hyperlasso
