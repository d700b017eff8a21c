#include "doctest.h"

#include "hyperlasso/error.hpp"
#include "hyperlasso/noise.hpp"

#include <cmath>
#include <numeric>

using namespace hyperlasso;

namespace {

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

TEST_CASE("zero-strength noise leaves data untouched") {
  const std::vector<double> clean{1.0, -2.0, 0.5};
  CHECK(apply_noise(clean, NoiseSpec::none()).noisy == clean);
  CHECK(apply_noise(clean, NoiseSpec::gaussian(0.0, 4)).noisy == clean);
  CHECK(apply_noise(clean, NoiseSpec::impulse(0.0, 0.5, 4)).noisy == clean);
  CHECK(max_abs_noise(apply_noise(clean, NoiseSpec::none())) == 0.0);
}

TEST_CASE("max_abs_noise") {
  SampleSet s;
  s.noise = {0.1, -0.4};
  CHECK(max_abs_noise(s) == 0.4);
}

TEST_CASE("gaussian sample standard deviation") {
  const std::vector<double> clean(300, 0.0);
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 123456789ull}) {
    const auto s = apply_noise(clean, NoiseSpec::gaussian(0.2, seed));
    CAPTURE(seed);
    CHECK(stddev(s.noise) >= 0.17);
    CHECK(stddev(s.noise) <= 0.23);
  }
  const auto big = apply_noise(std::vector<double>(200000, 0.0), NoiseSpec::gaussian(1.0, 3));
  CHECK(std::abs(mean(big.noise)) < 0.01);
  CHECK(stddev(big.noise) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("impulse noise distribution") {
  const std::vector<double> clean(100000, 0.0);
  const auto s = apply_noise(clean, NoiseSpec::impulse(3.5, 0.5, 8));
  std::size_t fired = 0;
  for (double e : s.noise) {
    CHECK(std::abs(e) <= 3.5);
    fired += e != 0.0;
  }
  CHECK(static_cast<double>(fired) / clean.size() == doctest::Approx(0.5).epsilon(0.02));
  // uniform on [-a, a] when fired: variance a^2/3, times p
  double var = 0.0;
  for (double e : s.noise) var += e * e;
  var /= clean.size();
  CHECK(var == doctest::Approx(0.5 * 3.5 * 3.5 / 3.0).epsilon(0.03));

  const auto never = apply_noise(clean, NoiseSpec::impulse(1.0, 0.0, 8));
  CHECK(max_abs_noise(never) == 0.0);
}

TEST_CASE("noise is reproducible and trial-dependent") {
  const std::vector<double> clean(1000, 1.0);
  const auto spec = NoiseSpec::mixed({NoiseSpec::gaussian(0.1), NoiseSpec::impulse(0.2)}, 77);
  const auto a = apply_noise(clean, spec, {0, false});
  const auto b = apply_noise(clean, spec, {0, false});
  const auto c = apply_noise(clean, spec, {1, false});
  CHECK(a.noisy == b.noisy);
  CHECK(a.noisy != c.noisy);
  for (std::size_t j = 0; j < clean.size(); ++j) {
    CHECK(a.noisy[j] == clean[j] + a.noise[j]);
  }
}

TEST_CASE("mixed components use independent streams") {
  const std::vector<double> clean(20000, 0.0);
  const auto g = apply_noise(clean, NoiseSpec::mixed({NoiseSpec::gaussian(1.0)}, 5));
  const auto gg = apply_noise(clean, NoiseSpec::mixed({NoiseSpec::gaussian(1.0),
                                                       NoiseSpec::gaussian(1.0)}, 5));
  // the second component is uncorrelated with the first
  std::vector<double> second(clean.size());
  for (std::size_t j = 0; j < clean.size(); ++j) second[j] = gg.noise[j] - g.noise[j];
  const double ma = mean(g.noise);
  const double mb = mean(second);
  double cov = 0.0;
  for (std::size_t j = 0; j < clean.size(); ++j) cov += (g.noise[j] - ma) * (second[j] - mb);
  cov /= clean.size();
  CHECK(std::abs(cov / (stddev(g.noise) * stddev(second))) < 0.1);
  CHECK(stddev(gg.noise) == doctest::Approx(std::sqrt(2.0)).epsilon(0.03));
}

TEST_CASE("mask_zero perturbs only non-zero values") {
  std::vector<double> clean(100, 0.0);
  for (std::size_t j = 0; j < clean.size(); j += 3) clean[j] = 1.0;
  const auto s = apply_noise(clean, NoiseSpec::gaussian(0.5, 2), {0, true});
  for (std::size_t j = 0; j < clean.size(); ++j) {
    if (clean[j] == 0.0) {
      CHECK(s.noisy[j] == 0.0);
    } else {
      CHECK(s.noise[j] != 0.0);
    }
  }
}

TEST_CASE("sup norm of gaussian noise grows like sqrt(log N)") {
  for (std::size_t n : {100u, 1000u, 10000u}) {
    double acc = 0.0;
    const int reps = 50;
    for (int t = 0; t < reps; ++t) {
      acc += max_abs_noise(apply_noise(std::vector<double>(n, 0.0), NoiseSpec::gaussian(0.2, 11),
                                       {static_cast<std::uint64_t>(t), false}));
    }
    const double c = acc / reps / (0.2 * std::sqrt(std::log(static_cast<double>(n))));
    CAPTURE(n);
    CHECK(c > 0.8);
    CHECK(c < 3.0);
  }
}

TEST_CASE("noise spec validation") {
  CHECK_THROWS_AS(apply_noise(std::vector<double>{1.0}, NoiseSpec::gaussian(-1.0)), InvalidArgument);
  CHECK_THROWS_AS(apply_noise(std::vector<double>{1.0}, NoiseSpec::impulse(1.0, 1.5)),
                  InvalidArgument);
  CHECK_THROWS_AS(NoiseSpec::mixed({NoiseSpec::impulse(-2.0)}).validate(), InvalidArgument);
}

TEST_CASE("rng helpers") {
  CHECK(rng::hash(1, 2, 3, 4) == rng::hash(1, 2, 3, 4));
  CHECK(rng::hash(1, 2, 3, 4) != rng::hash(1, 2, 3, 5));
  CHECK(rng::to_unit_open(0) > 0.0);
  CHECK(rng::to_unit_open(~0ull) < 1.0);
  CHECK(rng::standard_normal(0.5) == doctest::Approx(0.0));
  CHECK(rng::standard_normal(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
}
