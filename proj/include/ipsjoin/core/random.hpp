#pragma once

#include <cstdint>

namespace ipsjoin {

/// Root of every randomized operation. Equal seeds give equal outputs.
struct Seed {
  std::uint64_t value = 0;
};

/// Counter-based randomness: every draw is a pure function of
/// (seed, stream, counter), so any hash function or trial can be generated
/// independently on any thread without shared state.
namespace counter_rng {

std::uint64_t bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
/// Uniform in [0, 1) with 53 random bits.
double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
/// Standard normal via Box-Muller on two derived uniforms.
double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
/// Unit-rate exponential.
double exponential(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

}  // namespace counter_rng

/// Derives an independent 64-bit seed for a sub-computation.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Sequential generator over one (seed, stream) pair.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return counter_rng::bits(seed_, stream_, counter_++); }
  double uniform() { return counter_rng::uniform(seed_, stream_, counter_++); }
  double gaussian() { return counter_rng::gaussian(seed_, stream_, counter_++); }
  double exponential() { return counter_rng::exponential(seed_, stream_, counter_++); }
  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace ipsjoin
