#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "ipsjoin/core/join.hpp"
#include "ipsjoin/lowerbound/sequences.hpp"

namespace ipsjoin::lowerbound {

struct VerifyReport {
  bool pass = true;
  JoinMode mode = JoinMode::kUnsigned;
  std::size_t n = 0;
  /// min over j >= i of (sim(q_i, p_j) - s); +inf when there are no such pairs.
  double upper_margin = 0.0;
  /// min over j < i of (cs - sim(q_i, p_j)); +inf when n < 2.
  double lower_margin = 0.0;
  double max_data_norm = 0.0;
  double max_query_norm = 0.0;
  /// First failing (i, j) in row-major order, if a product check failed.
  std::optional<std::pair<std::size_t, std::size_t>> offending;
  std::string failure;  // empty on pass
};

/// Checks all n^2 products and both ball constraints. Products are compared
/// with relative tolerance 1e-12, norms against 1 + 1e-12 and U (1 + 1e-12).
/// sim is q.p in signed mode and |q.p| in unsigned mode.
VerifyReport verify_sequence(const HardSequence& seq, JoinMode mode);
VerifyReport verify_sequence(const HardSequence& seq);

}  // namespace ipsjoin::lowerbound
