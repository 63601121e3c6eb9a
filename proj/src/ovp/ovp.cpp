#include "ipsjoin/ovp/ovp.hpp"

#include <stdexcept>
#include <string>

#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/core/random.hpp"

namespace ipsjoin::ovp {
namespace {

template <typename V>
Dataset collect(std::vector<embeddings::Embedded>& rows) {
  std::vector<V> out;
  out.reserve(rows.size());
  std::size_t dim = 0;
  for (auto& r : rows) {
    out.push_back(std::move(std::get<V>(r)));
    dim = out.back().dim();
  }
  return make_dataset(std::move(out), dim);
}

Dataset embed_side(const std::vector<BinaryVector>& xs, int family, std::uint64_t param,
                   embeddings::Side side, embeddings::Budget budget) {
  std::vector<embeddings::Embedded> rows(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { rows[i] = embeddings::embed(family, param, xs[i], side, budget); });
  if (family == 3) return collect<BinaryVector>(rows);
  return collect<SignVector>(rows);
}

}  // namespace

void OvpInstance::validate() const {
  for (const auto* side : {&P, &Q}) {
    for (const auto& v : *side) {
      if (v.dim() != d) {
        throw std::invalid_argument("OVP instance: vector of dimension " + std::to_string(v.dim()) +
                                    " in an instance of dimension " + std::to_string(d));
      }
    }
  }
}

std::optional<IndexPair> ovp_bruteforce(const OvpInstance& inst) {
  inst.validate();
  std::vector<std::optional<std::size_t>> first(inst.P.size());
  parallel_for(inst.P.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < inst.Q.size(); ++j) {
      if (inner_product(inst.P[i], inst.Q[j]) == 0) {
        first[i] = j;
        return;
      }
    }
  });
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (first[i]) return IndexPair{i, *first[i]};
  }
  return std::nullopt;
}

OvpInstance random_instance(std::size_t n_data, std::size_t n_query, std::size_t d, double density,
                            std::uint64_t seed, bool planted) {
  if (d == 0) throw std::invalid_argument("random_instance: d must be >= 1");
  OvpInstance inst;
  inst.d = d;
  auto draw = [&](std::size_t count, std::uint64_t stream) {
    std::vector<BinaryVector> out;
    out.reserve(count);
    StreamRng rng(seed, stream);
    for (std::size_t i = 0; i < count; ++i) {
      BinaryVector::Builder b(d);
      for (std::size_t t = 0; t < d; ++t) b.push_bit(rng.bernoulli(density));
      out.push_back(std::move(b).finish());
    }
    return out;
  };
  inst.P = draw(n_data, 1);
  inst.Q = draw(n_query, 2);
  if (planted && n_data > 0 && n_query > 0) {
    StreamRng rng(seed, 3);
    const std::size_t i = rng.below(n_data);
    const std::size_t j = rng.below(n_query);
    BinaryVector::Builder b(d);
    for (std::size_t t = 0; t < d; ++t) b.push_bit(inst.Q[j].bit(t) && !inst.P[i].bit(t));
    inst.Q[j] = std::move(b).finish();
  }
  return inst;
}

JoinSpec join_spec_for(const embeddings::GapEmbeddingProfile& profile) {
  const double c = profile.cs > 0.0 ? profile.cs / profile.s : 0.5;
  return JoinSpec(profile.s, c, profile.is_signed ? JoinMode::kSigned : JoinMode::kUnsigned);
}

std::pair<Dataset, Dataset> embed_instance(const OvpInstance& inst, int family, std::uint64_t param,
                                           embeddings::Budget budget) {
  inst.validate();
  embeddings::validate_family(family, param, inst.d);
  return {embed_side(inst.P, family, param, embeddings::Side::kData, budget),
          embed_side(inst.Q, family, param, embeddings::Side::kQuery, budget)};
}

ReductionReport reduce_and_join(const OvpInstance& inst, int family, std::uint64_t param,
                                const Joiner& joiner, embeddings::Budget budget) {
  using Clock = std::chrono::steady_clock;
  ReductionReport report;
  report.profile = embeddings::profile(family, inst.d, param);
  report.join_spec = join_spec_for(report.profile);
  report.joiner = joiner.name();

  auto t0 = Clock::now();
  const auto [data, queries] = embed_instance(inst, family, param, budget);
  auto t1 = Clock::now();
  const std::vector<JoinPair> pairs = joiner.join(data, queries, report.join_spec);
  auto t2 = Clock::now();
  report.oracle_witness = ovp_bruteforce(inst);
  auto t3 = Clock::now();

  report.pairs_reported = pairs.size();
  for (const JoinPair& p : pairs) {
    const double sim = report.join_spec.similarity(p.value);
    if (sim > report.profile.cs && inner_product(inst.P[p.data], inst.Q[p.query]) == 0) {
      report.witness = IndexPair{p.data, p.query};
      break;
    }
  }
  report.join_found = report.witness.has_value();
  report.oracle_found = report.oracle_witness.has_value();
  report.timings = {t1 - t0, t2 - t1, t3 - t2};
  return report;
}

}  // namespace ipsjoin::ovp
