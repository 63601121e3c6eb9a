#include "ipsjoin/lsh/collision.hpp"

#include <cmath>
#include <stdexcept>

#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/core/random.hpp"
#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::lsh {

std::uint32_t HashFamily::hash(const RealVector& x, Side side, std::uint64_t fn_index) const {
  const RealVector t = transform(x, side);
  std::uint32_t code = 0;
  hash_batch(std::span<const RealVector>(&t, 1), fn_index, std::span<std::uint32_t>(&code, 1));
  return code;
}

CollisionEstimate make_estimate(std::uint64_t collisions, std::uint64_t trials) {
  CollisionEstimate e;
  e.trials = trials;
  e.collisions = collisions;
  if (trials > 0) {
    e.p_hat = static_cast<double>(collisions) / static_cast<double>(trials);
    e.stderr_ = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  }
  return e;
}

std::uint64_t trial_function(std::uint64_t seed, std::uint64_t trial) { return derive_seed(seed, trial); }

std::vector<std::uint32_t> signature_matrix(const HashFamily& family, std::span<const RealVector> transformed,
                                            std::uint64_t trials, std::uint64_t seed) {
  const std::size_t n = transformed.size();
  std::vector<std::uint32_t> sig(n * trials);
  // Work in blocks of trials so each worker owns a disjoint column range.
  constexpr std::uint64_t kBlock = 256;
  const std::uint64_t blocks = (trials + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    std::vector<std::uint32_t> codes(n);
    const std::uint64_t end = std::min<std::uint64_t>(trials, (b + 1) * kBlock);
    for (std::uint64_t t = b * kBlock; t < end; ++t) {
      family.hash_batch(transformed, trial_function(seed, t), codes);
      for (std::size_t i = 0; i < n; ++i) sig[i * trials + t] = codes[i];
    }
  });
  return sig;
}

CollisionEstimate estimate_collision(const HashFamily& family, const RealVector& x, const RealVector& y,
                                     std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_collision needs trials >= 1");
  const RealVector tx = family.transform(x, Side::kData);
  const RealVector ty = family.transform(y, Side::kQuery);
  if (tx.dim() != ty.dim()) throw std::invalid_argument("estimate_collision: dimension mismatch after transform");
  const RealVector both[2] = {tx, ty};
  const std::vector<std::uint32_t> sig = signature_matrix(family, both, trials, seed);
  const std::uint64_t hits = simd::count_equal(std::span<const std::uint32_t>(sig.data(), trials),
                                               std::span<const std::uint32_t>(sig.data() + trials, trials));
  return make_estimate(hits, trials);
}

}  // namespace ipsjoin::lsh
