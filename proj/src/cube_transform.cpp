#include "hyperlasso/cube_transform.hpp"

#include "hyperlasso/error.hpp"
#include "hyperlasso/kernels.hpp"

#include <cmath>
#include <numbers>

namespace hyperlasso {

std::vector<double> chebyshev_cosine_table(std::size_t rows, std::size_t cols, int n) {
  if (n < 1) throw InvalidArgument("chebyshev_cosine_table: n must be >= 1");
  std::vector<double> table(rows * cols);
  const auto period = static_cast<std::size_t>(2 * n);
  for (std::size_t p = 0; p < rows; ++p) {
    for (std::size_t q = 0; q < cols; ++q) {
      // Reduce p*q mod 2n first so large products keep full accuracy.
      const auto r = (p * q) % period;
      table[p * cols + q] = std::cos(std::numbers::pi * static_cast<double>(r) / n);
    }
  }
  return table;
}

std::vector<double> separable_transform_3d(std::span<const double> in, std::size_t P,
                                           std::span<const double> m, std::size_t Q) {
  if (in.size() != P * P * P) throw InvalidArgument("separable_transform_3d: input size");
  if (m.size() != P * Q) throw InvalidArgument("separable_transform_3d: matrix size");

  const auto row = [&](std::size_t p) { return m.subspan(p * Q, Q); };

  // Mode 3: s1[p1][p2][:] = sum_p3 in[p1][p2][p3] m[p3][:]
  std::vector<double> s1(P * P * Q, 0.0);
  for (std::size_t p12 = 0; p12 < P * P; ++p12) {
    const std::span<double> out(s1.data() + p12 * Q, Q);
    for (std::size_t p3 = 0; p3 < P; ++p3) {
      const double v = in[p12 * P + p3];
      if (v != 0.0) kernels::axpy(v, row(p3), out);
    }
  }

  // Mode 2: s2[p1][q2][:] = sum_p2 m[p2][q2] s1[p1][p2][:]
  std::vector<double> s2(P * Q * Q, 0.0);
  for (std::size_t p1 = 0; p1 < P; ++p1) {
    for (std::size_t p2 = 0; p2 < P; ++p2) {
      const std::span<const double> src(s1.data() + (p1 * P + p2) * Q, Q);
      for (std::size_t q2 = 0; q2 < Q; ++q2) {
        const std::span<double> dst(s2.data() + (p1 * Q + q2) * Q, Q);
        kernels::axpy(m[p2 * Q + q2], src, dst);
      }
    }
  }

  // Mode 1: out[q1][:][:] = sum_p1 m[p1][q1] s2[p1][:][:]
  std::vector<double> out(Q * Q * Q, 0.0);
  for (std::size_t q1 = 0; q1 < Q; ++q1) {
    const std::span<double> dst(out.data() + q1 * Q * Q, Q * Q);
    for (std::size_t p1 = 0; p1 < P; ++p1) {
      const std::span<const double> src(s2.data() + p1 * Q * Q, Q * Q);
      kernels::axpy(m[p1 * Q + q1], src, dst);
    }
  }
  return out;
}

}  // namespace hyperlasso
