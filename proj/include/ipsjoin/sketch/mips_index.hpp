#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ipsjoin/core/join.hpp"
#include "ipsjoin/core/random.hpp"
#include "ipsjoin/core/vectors.hpp"

namespace ipsjoin::sketch {

struct SketchParams {
  double kappa = 4.0;
  unsigned copies = 9;
  double C = 8.0;
  Seed seed{};

  /// Throws std::invalid_argument unless kappa >= 2, copies >= 1, C > 0.
  void validate() const;
};

/// Sketched rows of one prefix-tree node. Data indices are read as
/// `levels`-bit numbers, most significant bit first; the node at (level,
/// prefix) holds the indices whose top `level` bits equal `prefix`.
struct MipsNode {
  unsigned level = 0;
  std::uint64_t prefix = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  /// Per copy: row-major m x d matrix Pi * A restricted to the node.
  std::vector<std::vector<double>> copies;
};

struct RecoveryResult {
  std::size_t index = 0;
  /// (level, prefix) of every node visited after the root.
  std::vector<std::pair<unsigned, std::uint64_t>> path;
};

/// Unsigned c-MIPS structure: a sketch of the data matrix for every node of a
/// binary prefix tree over data indices, each with `copies` independent
/// repetitions for median boosting.
class MipsIndex {
 public:
  MipsIndex() = default;
  /// Throws std::invalid_argument on an empty dataset or mixed dimensions.
  static MipsIndex build(const std::vector<RealVector>& data, const SketchParams& params);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  unsigned levels() const { return levels_; }
  const SketchParams& params() const { return params_; }
  const std::vector<MipsNode>& nodes() const { return nodes_; }

  /// Nullptr when no node covers (level, prefix).
  const MipsNode* find(unsigned level, std::uint64_t prefix) const;
  /// Median over copies of |A_s q|_inf times the calibration factor.
  double estimate_max(const MipsNode& node, std::span<const double> q) const;
  /// Throws std::out_of_range for an unknown node.
  double estimate_max(unsigned level, std::uint64_t prefix, std::span<const double> q) const;

  /// Descends from the root into the child with the larger estimate (ties go
  /// to the 0-child) and returns the leaf's data index.
  RecoveryResult recover_path(std::span<const double> q) const;
  std::size_t recover(std::span<const double> q) const { return recover_path(q).index; }

  /// Sum over nodes and copies of the sketched row counts.
  std::size_t total_rows() const;
  /// Rows of the root sketch of copy 0.
  std::size_t root_rows() const;

  /// Assembles an index from stored parts (used by the file reader).
  static MipsIndex from_parts(std::size_t n, std::size_t d, SketchParams params, std::vector<MipsNode> nodes);

 private:
  std::size_t node_slot(unsigned level, std::uint64_t prefix) const;

  std::size_t n_ = 0;
  std::size_t d_ = 0;
  unsigned levels_ = 0;
  SketchParams params_;
  std::vector<MipsNode> nodes_;
  std::vector<std::size_t> slot_;  // heap position -> index in nodes_, or npos
};

/// Number of levels ceil(log2 n) of the prefix tree (0 for n = 1).
unsigned tree_levels(std::size_t n);

/// For each query, the pair (recover(q), q).
std::vector<std::pair<std::size_t, std::size_t>> unsigned_join_via_sketch(const std::vector<RealVector>& P,
                                                                          const std::vector<RealVector>& Q,
                                                                          const SketchParams& params);

/// (cs, s) join through the sketch index: reports (recover(q), q) when the
/// recovered pair has similarity >= cs.
class SketchJoiner final : public Joiner {
 public:
  explicit SketchJoiner(SketchParams params = {}) : params_(params) { params_.validate(); }
  std::string name() const override { return "sketch"; }
  std::vector<JoinPair> join(const Dataset& data, const Dataset& queries, const JoinSpec& spec) const override;

 private:
  SketchParams params_;
};

}  // namespace ipsjoin::sketch
