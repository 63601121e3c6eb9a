#pragma once

#include <cstddef>

#include "ipsjoin/core/vectors.hpp"
#include "ipsjoin/lsh/big_unsigned.hpp"
#include "ipsjoin/lsh/incoherent.hpp"

namespace ipsjoin::lsh {

/// k-bit two's-complement fixed point with scale 2^{-(k-1)} per coordinate:
/// representable values are m / 2^{k-1} for integers m in [-2^{k-1}, 2^{k-1}).
/// A d-dimensional vector maps to the d*k-bit index formed by concatenating
/// the coordinate codes, coordinate 0 most significant.
struct FixedPointCodec {
  unsigned k = 8;
  std::size_t d = 1;

  /// Throws std::invalid_argument unless 1 <= k <= 32 and d >= 1.
  void validate() const;
  std::size_t index_bits() const { return k * d; }
  /// 2^{dk}
  BigUnsigned index_count() const { return BigUnsigned::power_of_two(index_bits()); }

  /// Rounds each coordinate to the nearest representable value (clamped).
  RealVector quantize(const RealVector& x) const;
  bool representable(double value) const;
  /// Throws std::invalid_argument naming the first non-representable coordinate.
  BigUnsigned index(const RealVector& x) const;
};

/// Incoherent family sized for every index of the codec at coherence epsilon.
IncoherentFamily build_incoherent_for(const FixedPointCodec& codec, double epsilon);

/// x -> (x, sqrt(1 - |x|^2) v_{index(x)}), identical for data and queries.
/// Distinct quantized inputs satisfy |f(p).f(q) - p.q| <= family.epsilon.
/// Throws std::invalid_argument when |x| > 1, x is not representable, or the
/// family has fewer than 2^{dk} vectors.
RealVector symmetric_lift(const RealVector& x, const FixedPointCodec& codec, const IncoherentFamily& family);

}  // namespace ipsjoin::lsh
