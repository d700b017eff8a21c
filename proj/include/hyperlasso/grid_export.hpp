#pragma once

#include "hyperlasso/domain.hpp"
#include "hyperlasso/estimators.hpp"
#include "hyperlasso/quadrature.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlasso {

/// Plot grid description.
///   interval  "uniform:<n>"          n equispaced points on [-1,1]
///   disc      "polar:<nr>x<nt>"      radii (0..1] x angles, plus the centre
///   sphere    "latlon:<nlat>x<nlon>" colatitude [0,pi] x longitude [0,2pi)
///   cube      "<axis>=<v>:<n>"       n x n grid on the plane axis = v
struct GridSpec {
  DomainKind domain = DomainKind::Interval;
  std::vector<Point> points;
  std::string label;  // used in the output file name
};

/// Throws InvalidArgument on malformed specs or a slice outside [-1,1].
GridSpec parse_grid_spec(DomainKind domain, std::string_view spec);

/// CSV with coordinate columns, approx, true and pointwise error.
std::string format_grid_csv(const GridSpec& grid, const Expansion& expansion,
                            const PointFunction& truth);

void export_grid(const GridSpec& grid, const Expansion& expansion, const PointFunction& truth,
                 const std::filesystem::path& file);

}  // namespace hyperlasso
