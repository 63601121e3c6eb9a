#pragma once

// Per-backend entry points. Library code goes through kernels.hpp; this header
// exists so the equivalence tests can call both variants side by side.

#include <cstddef>
#include <cstdint>

namespace ipsjoin::simd {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  std::uint64_t (*popcount_xor)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  std::uint64_t (*popcount_and)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  std::uint64_t (*count_equal)(const std::uint32_t*, const std::uint32_t*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
};

namespace scalar {
const KernelTable& table();
}

namespace avx2 {
/// nullptr when the AVX2 translation unit was not compiled in.
const KernelTable* table();
}

}  // namespace ipsjoin::simd
