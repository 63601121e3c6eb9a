#include "ipsjoin/lowerbound/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::lowerbound {

double GapAudit::combined_stderr() const { return std::sqrt(p1_stderr * p1_stderr + p2_stderr * p2_stderr); }

bool GapAudit::pass() const { return gap() <= bound + 3.0 * combined_stderr(); }

double gap_bound(std::size_t n) {
  if (n < 2) throw std::invalid_argument("gap bound needs n >= 2");
  return 1.0 / (8.0 * std::log2(static_cast<double>(n)));
}

GapAudit gap_audit(const HardSequence& seq, const lsh::HashFamily& family, std::uint64_t trials,
                   std::uint64_t seed) {
  const std::size_t n = seq.size();
  if (trials < 1) throw std::invalid_argument("gap audit needs trials >= 1");
  GapAudit audit;
  audit.n = n;
  audit.trials = trials;
  audit.bound = gap_bound(n);

  // Rows 0..n-1 are lifted queries, rows n..2n-1 lifted data vectors.
  std::vector<RealVector> lifted(2 * n);
  parallel_for(n, [&](std::size_t i) {
    lifted[i] = family.transform(seq.Q[i], lsh::Side::kQuery);
    lifted[n + i] = family.transform(seq.P[i], lsh::Side::kData);
  });

  std::vector<std::uint64_t> hits(n * n, 0);
  constexpr std::uint64_t kChunk = 4096;
  for (std::uint64_t start = 0; start < trials; start += kChunk) {
    const std::uint64_t len = std::min(kChunk, trials - start);
    // Signatures of this chunk: trial t of the chunk uses function start + t.
    std::vector<std::uint32_t> sig(2 * n * len);
    parallel_for(len, [&](std::size_t t) {
      std::vector<std::uint32_t> codes(2 * n);
      family.hash_batch(lifted, lsh::trial_function(seed, start + t), codes);
      for (std::size_t r = 0; r < 2 * n; ++r) sig[r * len + t] = codes[r];
    });
    parallel_for(n, [&](std::size_t i) {
      std::span<const std::uint32_t> qi(sig.data() + i * len, len);
      for (std::size_t j = 0; j < n; ++j)
        hits[i * n + j] += simd::count_equal(qi, std::span<const std::uint32_t>(sig.data() + (n + j) * len, len));
    });
  }

  std::uint64_t p1_hits = trials + 1;
  std::uint64_t p2_hits = 0;
  bool any_lower = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t h = hits[i * n + j];
      if (j >= i) {
        p1_hits = std::min(p1_hits, h);
      } else {
        p2_hits = any_lower ? std::max(p2_hits, h) : h;
        any_lower = true;
      }
    }
  }
  const auto p1 = lsh::make_estimate(p1_hits, trials);
  const auto p2 = lsh::make_estimate(p2_hits, trials);
  audit.p1_min_hat = p1.p_hat;
  audit.p1_stderr = p1.stderr_;
  audit.p2_max_hat = p2.p_hat;
  audit.p2_stderr = p2.stderr_;
  return audit;
}

}  // namespace ipsjoin::lowerbound
