#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hyperlasso {

/// Additive noise model. Mixed sums the draws of its components.
struct NoiseSpec {
  enum class Kind { None, Gaussian, Impulse, Mixed };

  Kind kind = Kind::None;
  double sigma = 0.0;        // Gaussian standard deviation
  double amplitude = 0.0;    // impulse amplitude a
  double probability = 0.5;  // impulse firing probability
  std::vector<NoiseSpec> components;
  std::uint64_t seed = 0;

  static NoiseSpec none();
  static NoiseSpec gaussian(double sigma, std::uint64_t seed = 0);
  static NoiseSpec impulse(double amplitude, double probability = 0.5, std::uint64_t seed = 0);
  static NoiseSpec mixed(std::vector<NoiseSpec> components, std::uint64_t seed = 0);

  /// Throws InvalidArgument on sigma < 0, a < 0, p outside [0,1].
  void validate() const;
  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

std::string to_string(NoiseSpec::Kind kind);

/// noisy == clean + noise elementwise, exactly.
struct SampleSet {
  std::vector<double> clean;
  std::vector<double> noisy;
  std::vector<double> noise;
};

struct NoiseOptions {
  std::uint64_t trial = 0;
  /// Perturb only nodes where the clean value is non-zero.
  bool mask_zero = false;
};

/// Draws noise for every node. Each draw is a pure function of
/// (seed ^ trial, component, node, stream), so results do not depend on
/// evaluation order.
SampleSet apply_noise(std::span<const double> clean, const NoiseSpec& spec,
                      const NoiseOptions& options = {});

/// max_j |eps_j|
double max_abs_noise(const SampleSet& samples);

namespace rng {
/// Stateless 64-bit mix of a key tuple.
std::uint64_t hash(std::uint64_t key, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept;
/// Uniform on the open interval (0, 1).
double to_unit_open(std::uint64_t bits) noexcept;
/// Standard normal by inverse CDF.
double standard_normal(double u);
}  // namespace rng

}  // namespace hyperlasso
