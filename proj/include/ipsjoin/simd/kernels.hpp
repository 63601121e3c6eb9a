#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

/// Data-parallel inner loops shared by every module.
///
/// Each kernel has a scalar reference implementation and an AVX2 variant.
/// The active backend is selected once at startup from the CPU features and
/// can be overridden with the environment variable IPSJOIN_SIMD=scalar|avx2
/// or programmatically with force_backend(). Integer kernels are bit-exact
/// across backends; floating-point kernels may differ in the last bits
/// because the summation order differs.
namespace ipsjoin::simd {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend backend);
bool backend_available(Backend backend);
Backend active_backend();

/// Switches the dispatch table. Throws std::invalid_argument when the backend
/// is not available on this CPU.
void force_backend(Backend backend);

double dot(std::span<const double> a, std::span<const double> b);

/// popcount(a XOR b) over whole words.
std::uint64_t popcount_xor(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// popcount(a AND b) over whole words.
std::uint64_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Number of positions where a[i] == b[i].
std::uint64_t count_equal(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// max_i |x[i]|, 0 for an empty span.
double max_abs(std::span<const double> x);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace ipsjoin::simd
