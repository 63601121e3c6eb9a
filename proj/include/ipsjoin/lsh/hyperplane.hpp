#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ipsjoin/core/random.hpp"
#include "ipsjoin/core/vectors.hpp"

namespace ipsjoin::lsh {

/// Random-hyperplane (SimHash) family: function `fn_index` concatenates k
/// sign bits sign(g_b . x) for Gaussian g_b. The Gaussians are generated from
/// (seed, fn_index, b, coordinate), so functions need no stored state.
/// A single bit collides with probability 1 - theta/pi.
struct HyperplaneFamily {
  unsigned k = 1;
  Seed seed{};

  /// Throws std::invalid_argument unless 1 <= k <= 32.
  void validate() const;

  /// Row-major k x dim matrix of the function's Gaussian normals.
  std::vector<double> planes(std::size_t dim, std::uint64_t fn_index) const;

  /// k-bit code of x; bit b is set when g_b . x >= 0.
  std::uint32_t hash(std::span<const double> x, std::uint64_t fn_index) const;

  /// Hashes every row of `xs` with one function, reusing its normals.
  void hash_batch(std::span<const RealVector> xs, std::uint64_t fn_index, std::span<std::uint32_t> out) const;
};

/// Code of a unit vector; throws std::invalid_argument when |x| != 1 +- 1e-9.
std::uint32_t hyperplane_hash(const HyperplaneFamily& family, const RealVector& x, std::uint64_t fn_index);

}  // namespace ipsjoin::lsh
