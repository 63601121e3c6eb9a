#include "ipsjoin/simd/backends.hpp"

#if defined(IPSJOIN_HAVE_AVX2_TU) && defined(__AVX2__)

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace ipsjoin::simd::avx2 {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

// Nibble-table popcount (Mula et al.), accumulated per 64-bit lane with SAD.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t horizontal_sum_u64(__m256i v) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3));
}

template <typename Combine>
std::uint64_t popcount_binary(const std::uint64_t* a, const std::uint64_t* b, std::size_t n,
                              Combine combine) {
  __m256i total = _mm256_setzero_si256();
  std::size_t i = 0;
  // Byte counters hold at most 8 per word, so flush every 31 iterations at the latest.
  while (i + 4 <= n) {
    __m256i bytes = _mm256_setzero_si256();
    for (int rep = 0; rep < 31 && i + 4 <= n; ++rep, i += 4) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      bytes = _mm256_add_epi8(bytes, popcount_bytes(combine(va, vb)));
    }
    total = _mm256_add_epi64(total, _mm256_sad_epu8(bytes, _mm256_setzero_si256()));
  }
  return horizontal_sum_u64(total);
}

std::uint64_t popcount_xor(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  std::uint64_t acc =
      popcount_binary(a, b, body, [](__m256i x, __m256i y) { return _mm256_xor_si256(x, y); });
  for (std::size_t i = body; i < n; ++i) acc += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
  return acc;
}

std::uint64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  std::uint64_t acc =
      popcount_binary(a, b, body, [](__m256i x, __m256i y) { return _mm256_and_si256(x, y); });
  for (std::size_t i = body; i < n; ++i) acc += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return acc;
}

std::uint64_t count_equal(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::uint64_t acc = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb)));
    acc += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) acc += a[i] == b[i] ? 1 : 0;
  return acc;
}

double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i]));
  return r;
}

// Multiply then add (no FMA) so the result matches the scalar reference bit for bit.
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable* table() {
  static const KernelTable t{dot, popcount_xor, popcount_and, count_equal, max_abs, axpy};
  return &t;
}

}  // namespace ipsjoin::simd::avx2

#else

namespace ipsjoin::simd::avx2 {
const KernelTable* table() { return nullptr; }
}  // namespace ipsjoin::simd::avx2

#endif
