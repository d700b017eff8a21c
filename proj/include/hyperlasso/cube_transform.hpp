#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperlasso {

/// Separable transform of a cubic tensor by one matrix along every mode:
///   out[q1][q2][q3] = sum_{p} in[p1][p2][p3] * m[p1][q1] * m[p2][q2] * m[p3][q3]
/// `in` is P^3 row-major, `m` is P x Q row-major; returns Q^3 row-major.
/// Costs P^3 Q + P^2 Q^2 + P Q^3 instead of P^3 Q^3.
std::vector<double> separable_transform_3d(std::span<const double> in, std::size_t P,
                                           std::span<const double> m, std::size_t Q);

/// cos(p * q * pi / n) for p in 0..rows-1, q in 0..cols-1 (row-major).
/// Entry (p, q) equals T_q(cos(p*pi/n)) = T_p(cos(q*pi/n)).
std::vector<double> chebyshev_cosine_table(std::size_t rows, std::size_t cols, int n);

}  // namespace hyperlasso
