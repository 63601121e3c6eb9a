#include "ipsjoin/sketch/mips_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/simd/kernels.hpp"
#include "ipsjoin/sketch/sketch_matrix.hpp"

namespace ipsjoin::sketch {

namespace {

constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

std::size_t heap_position(unsigned level, std::uint64_t prefix) {
  return (std::size_t{1} << level) - 1 + static_cast<std::size_t>(prefix);
}

}  // namespace

void SketchParams::validate() const {
  if (!(kappa >= 2.0) || !std::isfinite(kappa)) throw std::invalid_argument("sketch kappa must be >= 2");
  if (copies < 1) throw std::invalid_argument("sketch needs copies >= 1");
  if (!(C > 0.0)) throw std::invalid_argument("sketch row constant must be positive");
}

unsigned tree_levels(std::size_t n) {
  if (n <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

MipsIndex MipsIndex::from_parts(std::size_t n, std::size_t d, SketchParams params, std::vector<MipsNode> nodes) {
  params.validate();
  if (n < 1 || d < 1) throw std::invalid_argument("sketch index needs n >= 1 and d >= 1");
  MipsIndex idx;
  idx.n_ = n;
  idx.d_ = d;
  idx.levels_ = tree_levels(n);
  idx.params_ = params;
  idx.nodes_ = std::move(nodes);
  idx.slot_.assign((std::size_t{2} << idx.levels_) - 1, kNoNode);
  for (std::size_t i = 0; i < idx.nodes_.size(); ++i) {
    const MipsNode& node = idx.nodes_[i];
    if (node.level > idx.levels_ || node.prefix >= (std::uint64_t{1} << node.level))
      throw std::invalid_argument("sketch index node outside the prefix tree");
    if (node.copies.size() != params.copies) throw std::invalid_argument("sketch index node has wrong copy count");
    for (const auto& rows : node.copies)
      if (rows.empty() || rows.size() % d != 0) throw std::invalid_argument("sketch index node has ragged rows");
    idx.slot_[heap_position(node.level, node.prefix)] = i;
  }
  return idx;
}

MipsIndex MipsIndex::build(const std::vector<RealVector>& data, const SketchParams& params) {
  params.validate();
  if (data.empty()) throw std::invalid_argument("sketch index needs at least one data vector");
  const std::size_t n = data.size();
  const std::size_t d = data.front().dim();
  if (d == 0) throw std::invalid_argument("sketch index needs d >= 1");
  for (const auto& p : data)
    if (p.dim() != d) throw std::invalid_argument("sketch index data has mixed dimensions");

  const unsigned L = tree_levels(n);
  std::vector<MipsNode> nodes;
  for (unsigned level = 0; level <= L; ++level) {
    const std::size_t width = std::size_t{1} << (L - level);
    for (std::uint64_t prefix = 0; prefix < (std::uint64_t{1} << level); ++prefix) {
      const std::size_t begin = static_cast<std::size_t>(prefix) * width;
      if (begin >= n) break;
      MipsNode node;
      node.level = level;
      node.prefix = prefix;
      node.begin = begin;
      node.end = std::min(n, begin + width);
      node.copies.resize(params.copies);
      nodes.push_back(std::move(node));
    }
  }

  const std::size_t jobs = nodes.size() * params.copies;
  parallel_for(jobs, [&](std::size_t job) {
    MipsNode& node = nodes[job / params.copies];
    const std::size_t copy = job % params.copies;
    const std::size_t count = node.end - node.begin;
    const std::size_t m = std::min(count, sketch_rows(count, params.kappa, params.C));
    const Seed seed{derive_seed(params.seed.value, heap_position(node.level, node.prefix) * params.copies + copy)};
    const SketchMatrix pi = sample_sketch_rows(count, params.kappa, m, seed);
    std::vector<double>& rows = node.copies[copy];
    rows.assign(pi.m * d, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      std::span<double> row(rows.data() + std::size_t{pi.bucket[i]} * d, d);
      simd::axpy(pi.scale[i], data[node.begin + i].values(), row);
    }
  });
  return from_parts(n, d, params, std::move(nodes));
}

std::size_t MipsIndex::node_slot(unsigned level, std::uint64_t prefix) const {
  if (level > levels_ || prefix >= (std::uint64_t{1} << level)) return kNoNode;
  return slot_[heap_position(level, prefix)];
}

const MipsNode* MipsIndex::find(unsigned level, std::uint64_t prefix) const {
  const std::size_t s = node_slot(level, prefix);
  return s == kNoNode ? nullptr : &nodes_[s];
}

double MipsIndex::estimate_max(const MipsNode& node, std::span<const double> q) const {
  if (q.size() != d_) throw std::invalid_argument("sketch query has the wrong dimension");
  std::vector<double> per_copy(node.copies.size());
  for (std::size_t c = 0; c < node.copies.size(); ++c) {
    const std::vector<double>& rows = node.copies[c];
    double best = 0.0;
    for (std::size_t r = 0; r * d_ < rows.size(); ++r)
      best = std::max(best, std::abs(simd::dot(std::span<const double>(rows.data() + r * d_, d_), q)));
    per_copy[c] = best;
  }
  const std::size_t mid = per_copy.size() / 2;
  std::nth_element(per_copy.begin(), per_copy.begin() + static_cast<std::ptrdiff_t>(mid), per_copy.end());
  double median = per_copy[mid];
  if (per_copy.size() % 2 == 0) {
    const double lower = *std::max_element(per_copy.begin(), per_copy.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  return median * std::pow(std::numbers::ln2, 1.0 / params_.kappa);
}

double MipsIndex::estimate_max(unsigned level, std::uint64_t prefix, std::span<const double> q) const {
  const MipsNode* node = find(level, prefix);
  if (node == nullptr) throw std::out_of_range("no sketch node at the requested level and prefix");
  return estimate_max(*node, q);
}

RecoveryResult MipsIndex::recover_path(std::span<const double> q) const {
  if (q.size() != d_) throw std::invalid_argument("sketch query has the wrong dimension");
  RecoveryResult result;
  std::uint64_t prefix = 0;
  for (unsigned level = 1; level <= levels_; ++level) {
    const MipsNode* zero = find(level, prefix << 1);
    const MipsNode* one = find(level, (prefix << 1) | 1u);
    bool take_one = false;
    if (one != nullptr) take_one = estimate_max(*one, q) > estimate_max(*zero, q);
    prefix = (prefix << 1) | (take_one ? 1u : 0u);
    result.path.emplace_back(level, prefix);
  }
  result.index = static_cast<std::size_t>(prefix);
  return result;
}

std::size_t MipsIndex::total_rows() const {
  std::size_t total = 0;
  for (const auto& node : nodes_)
    for (const auto& rows : node.copies) total += rows.size() / d_;
  return total;
}

std::size_t MipsIndex::root_rows() const {
  const MipsNode* root = find(0, 0);
  return root == nullptr ? 0 : root->copies.front().size() / d_;
}

std::vector<std::pair<std::size_t, std::size_t>> unsigned_join_via_sketch(const std::vector<RealVector>& P,
                                                                          const std::vector<RealVector>& Q,
                                                                          const SketchParams& params) {
  if (Q.empty()) return {};
  const MipsIndex index = MipsIndex::build(P, params);
  std::vector<std::pair<std::size_t, std::size_t>> out(Q.size());
  parallel_for(Q.size(), [&](std::size_t j) { out[j] = {index.recover(Q[j].values()), j}; });
  return out;
}

std::vector<JoinPair> SketchJoiner::join(const Dataset& data, const Dataset& queries, const JoinSpec& spec) const {
  if (data.domain() != queries.domain() || data.dim != queries.dim)
    throw std::invalid_argument("SketchJoiner: data and queries differ in domain or dimension");
  if (data.size() == 0 || queries.size() == 0) return {};
  const std::vector<RealVector> P = to_real(data);
  const std::vector<RealVector> Q = to_real(queries);
  const auto pairs = unsigned_join_via_sketch(P, Q, params_);
  std::vector<JoinPair> out;
  for (const auto& [i, j] : pairs) {
    const double v = dataset_inner_product(data, i, queries, j);
    if (spec.similarity(v) >= spec.cs()) out.push_back(JoinPair{i, j, v});
  }
  return out;
}

}  // namespace ipsjoin::sketch
