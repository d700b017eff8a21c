#include "hyperlasso/error.hpp"
#include "hyperlasso/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hyperlasso::kernels {

namespace {

bool detect_avx2() noexcept {
#if defined(HYPERLASSO_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() {
  const bool have = detect_avx2();
  if (const char* env = std::getenv("HYPERLASSO_SIMD")) {
    const std::string value(env);
    if (value == "scalar") return Isa::Scalar;
    if (value == "avx2" && have) return Isa::Avx2;
  }
  return have ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_same_size(std::size_t a, std::size_t b, const char* who) {
  if (a != b) throw InvalidArgument(std::string(who) + ": length mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool avx2_available() noexcept {
  static const bool have = detect_avx2();
  return have;
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) {
    throw InvalidArgument("force_isa: AVX2/FMA not supported on this CPU");
  }
  current().store(isa, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size(), "dot");
  return active_isa() == Isa::Avx2 ? avx2::dot(a.data(), b.data(), a.size())
                                   : scalar::dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size(), "axpy");
  if (active_isa() == Isa::Avx2) {
    avx2::axpy(alpha, x.data(), y.data(), x.size());
  } else {
    scalar::axpy(alpha, x.data(), y.data(), x.size());
  }
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  check_same_size(w.size(), a.size(), "weighted_dot");
  check_same_size(a.size(), b.size(), "weighted_dot");
  return active_isa() == Isa::Avx2 ? avx2::weighted_dot(w.data(), a.data(), b.data(), w.size())
                                   : scalar::weighted_dot(w.data(), a.data(), b.data(), w.size());
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b) {
  check_same_size(w.size(), a.size(), "weighted_sq_diff");
  check_same_size(a.size(), b.size(), "weighted_sq_diff");
  return active_isa() == Isa::Avx2
             ? avx2::weighted_sq_diff(w.data(), a.data(), b.data(), w.size())
             : scalar::weighted_sq_diff(w.data(), a.data(), b.data(), w.size());
}

}  // namespace hyperlasso::kernels
