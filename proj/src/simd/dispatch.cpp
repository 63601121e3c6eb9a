#include "ipsjoin/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ipsjoin/simd/backends.hpp"

namespace ipsjoin::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
         __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return &scalar::table();
    case Backend::kAvx2:
      return cpu_has_avx2() ? avx2::table() : nullptr;
  }
  return nullptr;
}

Backend initial_backend() {
  if (const char* env = std::getenv("IPSJOIN_SIMD")) {
    const std::string value(env);
    if (value == "scalar") return Backend::kScalar;
    if (value == "avx2" && table_for(Backend::kAvx2) != nullptr) return Backend::kAvx2;
  }
  return table_for(Backend::kAvx2) != nullptr ? Backend::kAvx2 : Backend::kScalar;
}

struct Dispatch {
  std::atomic<Backend> backend{initial_backend()};
  std::atomic<const KernelTable*> table{table_for(backend.load())};
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

const KernelTable& kernels() { return *dispatch().table.load(std::memory_order_relaxed); }

}  // namespace

std::string_view backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

bool backend_available(Backend backend) { return table_for(backend) != nullptr; }

Backend active_backend() { return dispatch().backend.load(); }

void force_backend(Backend backend) {
  const KernelTable* t = table_for(backend);
  if (t == nullptr) {
    throw std::invalid_argument("SIMD backend not available: " + std::string(backend_name(backend)));
  }
  dispatch().table.store(t);
  dispatch().backend.store(backend);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  return kernels().dot(a.data(), b.data(), a.size());
}

std::uint64_t popcount_xor(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("popcount_xor: length mismatch");
  return kernels().popcount_xor(a.data(), b.data(), a.size());
}

std::uint64_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("popcount_and: length mismatch");
  return kernels().popcount_and(a.data(), b.data(), a.size());
}

std::uint64_t count_equal(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("count_equal: length mismatch");
  return kernels().count_equal(a.data(), b.data(), a.size());
}

double max_abs(std::span<const double> x) { return kernels().max_abs(x.data(), x.size()); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace ipsjoin::simd
