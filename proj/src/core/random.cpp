#include "ipsjoin/core/random.hpp"

#include <cmath>
#include <numbers>

namespace ipsjoin {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

namespace counter_rng {

std::uint64_t bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return static_cast<double>(bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t r = bits(seed, stream, counter);
  // Second uniform from a re-mixed word; u1 in (0, 1] keeps the log finite.
  const double u1 = (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(splitmix64(r) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double exponential(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const double u = (static_cast<double>(bits(seed, stream, counter) >> 11) + 1.0) * 0x1.0p-53;
  return -std::log(u);
}

}  // namespace counter_rng

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

std::uint64_t StreamRng::below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
  }
}

}  // namespace ipsjoin
