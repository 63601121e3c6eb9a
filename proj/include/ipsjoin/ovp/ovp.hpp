#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ipsjoin/core/join.hpp"
#include "ipsjoin/core/vectors.hpp"
#include "ipsjoin/embeddings/embeddings.hpp"
#include "ipsjoin/embeddings/profile.hpp"

namespace ipsjoin::ovp {

/// Orthogonal Vectors instance: is there p in P, q in Q with p.q = 0?
struct OvpInstance {
  std::vector<BinaryVector> P;
  std::vector<BinaryVector> Q;
  std::size_t d = 0;

  /// Throws std::invalid_argument if any vector has dimension != d.
  void validate() const;
};

/// (index into P, index into Q)
using IndexPair = std::pair<std::size_t, std::size_t>;

/// Lexicographically smallest orthogonal pair, or nullopt. Parallel over P.
std::optional<IndexPair> ovp_bruteforce(const OvpInstance& inst);

/// Splits P into consecutive chunks of `chunk` vectors (the last may be shorter).
template <typename T>
std::vector<std::vector<T>> split_chunks(const std::vector<T>& items, std::size_t chunk) {
  if (chunk == 0) throw std::invalid_argument("split_chunks: chunk size must be >= 1");
  std::vector<std::vector<T>> out;
  for (std::size_t begin = 0; begin < items.size(); begin += chunk) {
    const std::size_t end = std::min(items.size(), begin + chunk);
    out.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(begin),
                     items.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

/// Uniform random instance with P(bit = 1) = density. With `planted`, one
/// seeded (i, j) pair is forced orthogonal by clearing Q[j]'s bits on P[i]'s support.
OvpInstance random_instance(std::size_t n_data, std::size_t n_query, std::size_t d, double density,
                            std::uint64_t seed, bool planted);

struct PhaseTimings {
  std::chrono::nanoseconds embed{0};
  std::chrono::nanoseconds join{0};
  std::chrono::nanoseconds oracle{0};
};

struct ReductionReport {
  embeddings::GapEmbeddingProfile profile;
  JoinSpec join_spec;
  std::string joiner;
  bool join_found = false;
  bool oracle_found = false;
  std::optional<IndexPair> witness;         // from the join, original indices
  std::optional<IndexPair> oracle_witness;  // from ovp_bruteforce
  std::size_t pairs_reported = 0;
  PhaseTimings timings;

  bool agree() const noexcept { return join_found == oracle_found; }
};

/// Join thresholds derived from a profile: s from the profile, c = cs/s, or
/// c = 1/2 when cs = 0 (any c in (0,1) separates 0 from s there).
JoinSpec join_spec_for(const embeddings::GapEmbeddingProfile& profile);

/// Embeds P with the data map and Q with the query map of the chosen family,
/// runs `joiner`, and cross-checks against ovp_bruteforce. A reported pair
/// counts as a hit only if its embedded similarity exceeds the profile's cs
/// and its original vectors are orthogonal.
ReductionReport reduce_and_join(const OvpInstance& inst, int family, std::uint64_t param,
                                const Joiner& joiner, embeddings::Budget budget = {});

/// Embeds both sides into datasets (index-preserving).
std::pair<Dataset, Dataset> embed_instance(const OvpInstance& inst, int family, std::uint64_t param,
                                           embeddings::Budget budget = {});

}  // namespace ipsjoin::ovp
