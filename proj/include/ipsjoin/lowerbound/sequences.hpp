#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ipsjoin/core/join.hpp"
#include "ipsjoin/core/vectors.hpp"
#include "ipsjoin/lsh/incoherent.hpp"

namespace ipsjoin::lowerbound {

enum class SequenceCase { k1a, k1b, k2, k3 };

std::string_view case_name(SequenceCase kind);
/// Accepts "1a", "1b", "2", "3"; throws std::invalid_argument otherwise.
SequenceCase parse_case(std::string_view name);

/// Paired query/data sequences with the staircase property
///   q_i . p_j >= s for j >= i,   q_i . p_j <= cs for j < i,
/// |p| <= 1 and |q| <= U.
struct HardSequence {
  SequenceCase kind = SequenceCase::k1a;
  double s = 0.0;
  double c = 0.0;
  double U = 1.0;
  std::size_t dim = 1;
  std::vector<RealVector> Q;
  std::vector<RealVector> P;
  /// Surviving length of every block (cases 1b and 2), in block order.
  std::vector<std::size_t> block_lengths;
  /// Incoherent family behind case 3.
  std::optional<lsh::IncoherentFamily> family;
  double epsilon = 0.0;  // case 3 coherence target c / (2 L^2)

  std::size_t size() const { return Q.size(); }
  /// Case 2 is signed-only; the others hold for absolute values too.
  JoinMode natural_mode() const { return kind == SequenceCase::k2 ? JoinMode::kSigned : JoinMode::kUnsigned; }
};

/// floor(log_{1/c}(U/s)) + 1
std::size_t case1_length(double s, double c, double U);

/// q_i = U c^i, p_j = s / (U c^j). Throws std::invalid_argument unless
/// 0 < s <= cU and 0 < c < 1.
HardSequence seq_case1_1d(double s, double c, double U);

/// d/2 translated one-dimensional blocks; index pairs whose query or data
/// vector leaves its ball are removed. Throws std::invalid_argument unless d
/// is even, d >= 2 and s <= min(cU, U / (2 sqrt d)).
HardSequence seq_case1_blocked(double s, double c, double U, std::size_t d);

/// d/2 translated two-dimensional blocks, each cut to its longest prefix
/// inside the balls. Throws std::invalid_argument unless d is even, d >= 2,
/// s <= U / (2d) and 0 < c < 1.
HardSequence seq_case2(double s, double c, double U, std::size_t d);

/// Guaranteed block length floor(sqrt(U / (s (1-c))) / 2) for case 2.
std::size_t case2_min_block(double s, double c, double U);

/// Prefix-tree sums over an incoherent family with L = floor(sqrt(U / 8s))
/// bit levels and epsilon = c / (2 L^2). Query i is paired with data vector
/// i + 1 of the tree order, giving 2^L - 1 pairs. Throws
/// std::invalid_argument unless s <= U/8 and 0 < c < 1.
HardSequence seq_case3(double s, double U, double c);

}  // namespace ipsjoin::lowerbound
