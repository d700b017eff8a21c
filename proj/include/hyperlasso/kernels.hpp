#pragma once

// Dense inner loops used by the coefficient, evaluation and Gram code.
//
// Every kernel has a scalar reference implementation and an AVX2/FMA
// variant. The public entry points dispatch on the CPU once at startup;
// the choice can be pinned with HYPERLASSO_SIMD=scalar|avx2 or force_isa().
// Both variants use a fixed reduction order, so a given ISA is bitwise
// reproducible run to run.

#include <cstddef>
#include <span>
#include <string_view>

namespace hyperlasso::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;
bool avx2_available() noexcept;
Isa active_isa() noexcept;
/// Forces a kernel family. Throws InvalidArgument if the CPU lacks it.
void force_isa(Isa isa);

/// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// sum_i w[i] * a[i] * b[i]
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);
/// sum_i w[i] * (a[i] - b[i])^2
double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) noexcept;
double weighted_sq_diff(const double* w, const double* a, const double* b, std::size_t n) noexcept;
}  // namespace scalar

namespace avx2 {
// Only call when avx2_available() is true.
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept;
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) noexcept;
double weighted_sq_diff(const double* w, const double* a, const double* b, std::size_t n) noexcept;
}  // namespace avx2

}  // namespace hyperlasso::kernels
