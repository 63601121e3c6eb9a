#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ipsjoin/core/random.hpp"

namespace ipsjoin::sketch {

/// Linear map R^n -> R^m whose sup-norm tracks the l_kappa norm of the input.
///
/// Stage 1 scales coordinate i by E_i^{-1/kappa} (E_i unit exponentials);
/// stage 2 adds each scaled coordinate with a random sign into one of m
/// buckets. Without collisions, P[|Pi x|_inf <= t] = exp(-(|x|_kappa / t)^kappa),
/// so |Pi x|_inf * (ln 2)^{1/kappa} has median |x|_kappa.
struct SketchMatrix {
  double kappa = 2.0;
  std::size_t n = 0;
  std::size_t m = 0;
  Seed seed{};
  std::vector<double> scale;           // E_i^{-1/kappa} times the sign
  std::vector<std::uint32_t> bucket;   // row of coordinate i

  std::vector<double> apply(std::span<const double> x) const;
  /// Median-calibration factor (ln 2)^{1/kappa}.
  double calibration() const;
};

/// Row count ceil(C * n^{1-2/kappa} * ln(n+1)).
std::size_t sketch_rows(std::size_t n, double kappa, double C);

/// Throws std::invalid_argument unless kappa >= 2, n >= 1 and C > 0.
SketchMatrix sample_sketch(std::size_t n, double kappa, Seed seed, double C = 8.0);

/// Sketch with an explicit row count. When m >= n every coordinate gets its
/// own row (bucket i = i) and m is reduced to n.
SketchMatrix sample_sketch_rows(std::size_t n, double kappa, std::size_t m, Seed seed);

}  // namespace ipsjoin::sketch
