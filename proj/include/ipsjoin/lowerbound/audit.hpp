#pragma once

#include <cstddef>
#include <cstdint>

#include "ipsjoin/lowerbound/sequences.hpp"
#include "ipsjoin/lsh/collision.hpp"

namespace ipsjoin::lowerbound {

/// Empirical check of P1 - P2 <= 1/(8 log2 n) for one hash family on one
/// staircase sequence.
struct GapAudit {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  double bound = 0.0;  // 1 / (8 log2 n)
  double p1_min_hat = 0.0;
  double p1_stderr = 0.0;
  double p2_max_hat = 0.0;
  double p2_stderr = 0.0;

  double gap() const { return p1_min_hat - p2_max_hat; }
  double combined_stderr() const;
  /// gap <= bound + 3 * combined stderr
  bool pass() const;
};

/// 1 / (8 log2 n); throws std::invalid_argument for n < 2.
double gap_bound(std::size_t n);

/// Estimates the collision probability of every (q_i, p_j) pair with a shared
/// set of `trials` hash functions; p1 is the minimum over j >= i, p2 the
/// maximum over j < i. Throws std::invalid_argument when n < 2 or trials < 1.
GapAudit gap_audit(const HardSequence& seq, const lsh::HashFamily& family, std::uint64_t trials,
                   std::uint64_t seed);

}  // namespace ipsjoin::lowerbound
