#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ipsjoin/core/join.hpp"
#include "ipsjoin/core/random.hpp"

namespace ipsjoin::lsh {

struct LshParams {
  unsigned k = 8;       // bits per table key
  unsigned tables = 16;
  Seed seed{};
};

/// Bucketed join over asymmetric-lifted vectors: data rows are scaled into the
/// unit ball, queries are lifted with U = max query norm / max data norm, and
/// every row is keyed by k hyperplane bits in each of L tables. Candidates
/// sharing a bucket with the query (or with -q in unsigned mode) are checked
/// exactly; the lowest-index candidate with similarity >= cs is reported.
/// May miss pairs; never reports a pair below cs.
class LshJoiner final : public Joiner {
 public:
  explicit LshJoiner(LshParams params = {});
  std::string name() const override { return "lsh"; }
  std::vector<JoinPair> join(const Dataset& data, const Dataset& queries, const JoinSpec& spec) const override;

 private:
  LshParams params_;
};

}  // namespace ipsjoin::lsh
