#include "ipsjoin/lsh/lsh_index.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/lsh/collision.hpp"

namespace ipsjoin::lsh {

LshJoiner::LshJoiner(LshParams params) : params_(params) {
  if (params_.tables < 1) throw std::invalid_argument("LshJoiner needs at least one table");
  HyperplaneFamily{params_.k, params_.seed}.validate();
}

namespace {

double max_norm(const std::vector<RealVector>& rows) {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.norm());
  return m;
}

RealVector scaled(const RealVector& x, double factor) {
  const auto src = x.values();
  std::vector<double> v(src.begin(), src.end());
  for (double& e : v) e *= factor;
  return RealVector(std::move(v));
}

}  // namespace

std::vector<JoinPair> LshJoiner::join(const Dataset& data, const Dataset& queries, const JoinSpec& spec) const {
  if (data.domain() != queries.domain() || data.dim != queries.dim)
    throw std::invalid_argument("LshJoiner: data and queries differ in domain or dimension");
  const std::vector<RealVector> P = to_real(data);
  const std::vector<RealVector> Q = to_real(queries);
  if (P.empty() || Q.empty()) return {};

  const double pn = max_norm(P);
  const double qn = max_norm(Q);
  const double scale = pn > 0.0 ? 1.0 / pn : 1.0;
  const double U = std::max(1.0, qn * scale);
  const AsymmetricLiftFamily family(U, HyperplaneFamily{params_.k, params_.seed});

  std::vector<RealVector> lp(P.size());
  parallel_for(P.size(), [&](std::size_t i) { lp[i] = family.transform(scaled(P[i], scale), Side::kData); });
  std::vector<RealVector> lq(Q.size()), lq_neg(Q.size());
  parallel_for(Q.size(), [&](std::size_t j) {
    const RealVector q = scaled(Q[j], scale);
    lq[j] = family.transform(q, Side::kQuery);
    lq_neg[j] = family.transform(scaled(q, -1.0), Side::kQuery);
  });

  const bool probe_negated = spec.mode == JoinMode::kUnsigned;
  std::vector<std::vector<std::size_t>> candidates(Q.size());
  std::vector<std::uint32_t> pcodes(P.size()), qcodes(Q.size()), ncodes(Q.size());
  for (unsigned t = 0; t < params_.tables; ++t) {
    family.hash_batch(lp, t, pcodes);
    family.hash_batch(lq, t, qcodes);
    if (probe_negated) family.hash_batch(lq_neg, t, ncodes);
    std::unordered_map<std::uint32_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < P.size(); ++i) buckets[pcodes[i]].push_back(i);
    for (std::size_t j = 0; j < Q.size(); ++j) {
      for (std::uint32_t code : {qcodes[j], ncodes[j]}) {
        auto it = buckets.find(code);
        if (it != buckets.end()) candidates[j].insert(candidates[j].end(), it->second.begin(), it->second.end());
        if (!probe_negated) break;
      }
    }
  }

  std::vector<std::optional<JoinPair>> hits(Q.size());
  parallel_for(Q.size(), [&](std::size_t j) {
    auto& c = candidates[j];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i : c) {
      const double v = dataset_inner_product(data, i, queries, j);
      if (spec.similarity(v) >= spec.cs()) {
        hits[j] = JoinPair{i, j, v};
        return;
      }
    }
  });
  std::vector<JoinPair> out;
  for (auto& h : hits)
    if (h) out.push_back(*h);
  return out;
}

}  // namespace ipsjoin::lsh
