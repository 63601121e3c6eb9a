#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ipsjoin/core/dataset_io.hpp"

namespace ipsjoin {

enum class JoinMode { kSigned, kUnsigned };

/// Parameters of a (cs, s) join: for every query with some data vector at
/// similarity >= s, report at least one pair with similarity >= c*s.
/// Similarity is p.q (signed) or |p.q| (unsigned).
struct JoinSpec {
  double s = 1.0;
  double c = 0.5;
  JoinMode mode = JoinMode::kSigned;

  JoinSpec() = default;
  /// Throws std::invalid_argument unless s > 0 and 0 < c < 1.
  JoinSpec(double s, double c, JoinMode mode);

  double cs() const noexcept { return c * s; }
  double similarity(double inner) const noexcept;
};

struct JoinPair {
  std::size_t data = 0;
  std::size_t query = 0;
  double value = 0.0;  // raw inner product

  friend bool operator==(const JoinPair&, const JoinPair&) = default;
};

/// A (cs, s) join strategy. Implementations must be deterministic.
class Joiner {
 public:
  virtual ~Joiner() = default;
  virtual std::string name() const = 0;
  /// Pairs are returned sorted by (query, data).
  virtual std::vector<JoinPair> join(const Dataset& data, const Dataset& queries,
                                     const JoinSpec& spec) const = 0;
};

/// Exact threshold join: for each query, the lowest-index data vector with
/// similarity >= s, if any. Parallel over queries.
class BruteForceJoiner final : public Joiner {
 public:
  std::string name() const override { return "brute"; }
  std::vector<JoinPair> join(const Dataset& data, const Dataset& queries,
                             const JoinSpec& spec) const override;
};

/// Inner product between row i of `a` and row j of `b` (same domain and dim).
double dataset_inner_product(const Dataset& a, std::size_t i, const Dataset& b, std::size_t j);

/// Converts any dataset to real vectors (sign -> +-1, binary -> 0/1).
std::vector<RealVector> to_real(const Dataset& data);

}  // namespace ipsjoin
