#include "hyperlasso/noise.hpp"

#include "hyperlasso/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace hyperlasso {

namespace rng {

namespace {

// SplitMix64 finaliser.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t hash(std::uint64_t key, std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
  return mix(mix(mix(mix(key) ^ a) ^ b) ^ c);
}

double to_unit_open(std::uint64_t bits) noexcept {
  // 52 random bits, shifted half a step off zero. With 53 bits the top
  // value would round up to exactly 1.
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

double standard_normal(double u) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

}  // namespace rng

namespace {

enum Stream : std::uint64_t { kGauss = 0, kImpulseValue = 1, kImpulseFire = 2 };

double draw(const NoiseSpec& spec, std::uint64_t key, std::uint64_t component,
            std::uint64_t node) {
  switch (spec.kind) {
    case NoiseSpec::Kind::None:
      return 0.0;
    case NoiseSpec::Kind::Gaussian: {
      if (spec.sigma == 0.0) return 0.0;
      const double u = rng::to_unit_open(rng::hash(key, component, node, kGauss));
      return spec.sigma * rng::standard_normal(u);
    }
    case NoiseSpec::Kind::Impulse: {
      // a * (1 - 2 rand) * Bernoulli(p)
      const double fire = rng::to_unit_open(rng::hash(key, component, node, kImpulseFire));
      if (!(fire < spec.probability)) return 0.0;
      const double u = rng::to_unit_open(rng::hash(key, component, node, kImpulseValue));
      return spec.amplitude * (1.0 - 2.0 * u);
    }
    case NoiseSpec::Kind::Mixed: {
      double sum = 0.0;
      for (std::size_t i = 0; i < spec.components.size(); ++i) {
        sum += draw(spec.components[i], key, component * 16 + i + 1, node);
      }
      return sum;
    }
  }
  return 0.0;
}

}  // namespace

NoiseSpec NoiseSpec::none() { return NoiseSpec{}; }

NoiseSpec NoiseSpec::gaussian(double sigma, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = Kind::Gaussian;
  s.sigma = sigma;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::impulse(double amplitude, double probability, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = Kind::Impulse;
  s.amplitude = amplitude;
  s.probability = probability;
  s.seed = seed;
  return s;
}

NoiseSpec NoiseSpec::mixed(std::vector<NoiseSpec> components, std::uint64_t seed) {
  NoiseSpec s;
  s.kind = Kind::Mixed;
  s.components = std::move(components);
  s.seed = seed;
  return s;
}

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("noise: sigma must be >= 0");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw InvalidArgument("noise: amplitude must be >= 0");
  }
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw InvalidArgument("noise: probability must lie in [0,1]");
  }
  for (const auto& c : components) c.validate();
}

std::string to_string(NoiseSpec::Kind kind) {
  switch (kind) {
    case NoiseSpec::Kind::None: return "none";
    case NoiseSpec::Kind::Gaussian: return "gaussian";
    case NoiseSpec::Kind::Impulse: return "impulse";
    case NoiseSpec::Kind::Mixed: return "mixed";
  }
  return "unknown";
}

SampleSet apply_noise(std::span<const double> clean, const NoiseSpec& spec,
                      const NoiseOptions& options) {
  spec.validate();
  SampleSet s;
  s.clean.assign(clean.begin(), clean.end());
  s.noise.assign(clean.size(), 0.0);
  s.noisy.resize(clean.size());
  const std::uint64_t key = spec.seed ^ options.trial;
  for (std::size_t j = 0; j < clean.size(); ++j) {
    if (!(options.mask_zero && clean[j] == 0.0)) s.noise[j] = draw(spec, key, 0, j);
    s.noisy[j] = clean[j] + s.noise[j];
  }
  return s;
}

double max_abs_noise(const SampleSet& samples) {
  double m = 0.0;
  for (double e : samples.noise) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace hyperlasso
