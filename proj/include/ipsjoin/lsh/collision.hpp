#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ipsjoin/core/vectors.hpp"
#include "ipsjoin/lsh/hyperplane.hpp"
#include "ipsjoin/lsh/lift.hpp"
#include "ipsjoin/lsh/symmetric_lift.hpp"

namespace ipsjoin::lsh {

enum class Side { kData, kQuery };

/// A family of hash-function pairs (h_p, h_q), indexed by fn_index.
///
/// Hashing is split into a per-side transform (a lift onto the sphere, or the
/// identity) and a side-independent code on the transformed vector, so batch
/// users can transform once and hash many times.
class HashFamily {
 public:
  virtual ~HashFamily() = default;
  virtual std::string name() const = 0;
  /// True when h_p = h_q.
  virtual bool symmetric() const = 0;

  virtual RealVector transform(const RealVector& x, Side side) const = 0;
  virtual void hash_batch(std::span<const RealVector> transformed, std::uint64_t fn_index,
                          std::span<std::uint32_t> out) const = 0;

  std::uint32_t hash(const RealVector& x, Side side, std::uint64_t fn_index) const;
};

/// Plain hyperplane LSH on the input vectors (symmetric).
class HyperplaneHashFamily final : public HashFamily {
 public:
  explicit HyperplaneHashFamily(HyperplaneFamily planes) : planes_(planes) { planes_.validate(); }
  std::string name() const override { return "hyperplane"; }
  bool symmetric() const override { return true; }
  RealVector transform(const RealVector& x, Side) const override { return x; }
  void hash_batch(std::span<const RealVector> transformed, std::uint64_t fn_index,
                  std::span<std::uint32_t> out) const override {
    planes_.hash_batch(transformed, fn_index, out);
  }

 private:
  HyperplaneFamily planes_;
};

/// Asymmetric lift onto the unit sphere followed by hyperplane LSH.
class AsymmetricLiftFamily final : public HashFamily {
 public:
  AsymmetricLiftFamily(double U, HyperplaneFamily planes) : lift_(U), planes_(planes) { planes_.validate(); }
  std::string name() const override { return "asymmetric-lift"; }
  bool symmetric() const override { return false; }
  RealVector transform(const RealVector& x, Side side) const override {
    return side == Side::kData ? lift_.data(x) : lift_.query(x);
  }
  void hash_batch(std::span<const RealVector> transformed, std::uint64_t fn_index,
                  std::span<std::uint32_t> out) const override {
    planes_.hash_batch(transformed, fn_index, out);
  }
  double U() const { return lift_.U; }

 private:
  AsymmetricLift lift_;
  HyperplaneFamily planes_;
};

/// Symmetric incoherent lift followed by hyperplane LSH.
class SymmetricLiftFamily final : public HashFamily {
 public:
  SymmetricLiftFamily(FixedPointCodec codec, IncoherentFamily incoherent, HyperplaneFamily planes)
      : codec_(codec), incoherent_(incoherent), planes_(planes) {
    planes_.validate();
  }
  std::string name() const override { return "symmetric-lift"; }
  bool symmetric() const override { return true; }
  RealVector transform(const RealVector& x, Side) const override {
    return symmetric_lift(x, codec_, incoherent_);
  }
  void hash_batch(std::span<const RealVector> transformed, std::uint64_t fn_index,
                  std::span<std::uint32_t> out) const override {
    planes_.hash_batch(transformed, fn_index, out);
  }

 private:
  FixedPointCodec codec_;
  IncoherentFamily incoherent_;
  HyperplaneFamily planes_;
};

struct CollisionEstimate {
  std::uint64_t trials = 0;
  std::uint64_t collisions = 0;
  double p_hat = 0.0;
  double stderr_ = 0.0;  // binomial sqrt(p(1-p)/trials)
};

CollisionEstimate make_estimate(std::uint64_t collisions, std::uint64_t trials);

/// Function index used for trial t under estimator seed `seed`.
std::uint64_t trial_function(std::uint64_t seed, std::uint64_t trial);

/// Collision frequency of h_p(x) = h_q(y) over `trials` seeded functions.
/// Parallel over trials; identical for any thread count.
CollisionEstimate estimate_collision(const HashFamily& family, const RealVector& x, const RealVector& y,
                                     std::uint64_t trials, std::uint64_t seed);

/// Codes of already-transformed vectors under trials [0, trials): result is
/// row-major [vector][trial] so per-pair collision counts are contiguous scans.
std::vector<std::uint32_t> signature_matrix(const HashFamily& family, std::span<const RealVector> transformed,
                                            std::uint64_t trials, std::uint64_t seed);

}  // namespace ipsjoin::lsh
