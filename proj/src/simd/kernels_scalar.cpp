#include "ipsjoin/simd/backends.hpp"

#include <bit>
#include <cmath>

namespace ipsjoin::simd::scalar {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

std::uint64_t popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
  return acc;
}

std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return acc;
}

std::uint64_t count_equal(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] == b[i] ? 1 : 0;
  return acc;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{dot, popcount_xor, popcount_and, count_equal, max_abs, axpy};
  return t;
}

}  // namespace ipsjoin::simd::scalar
