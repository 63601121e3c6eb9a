#include "ipsjoin/sketch/sketch_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ipsjoin::sketch {

namespace {

constexpr std::uint64_t kScaleStream = 1;
constexpr std::uint64_t kSignStream = 2;
constexpr std::uint64_t kBucketStream = 3;

void check(std::size_t n, double kappa) {
  if (!(kappa >= 2.0) || !std::isfinite(kappa)) throw std::invalid_argument("sketch kappa must be >= 2");
  if (n < 1) throw std::invalid_argument("sketch needs n >= 1");
}

}  // namespace

std::size_t sketch_rows(std::size_t n, double kappa, double C) {
  check(n, kappa);
  if (!(C > 0.0)) throw std::invalid_argument("sketch row constant must be positive");
  const double nd = static_cast<double>(n);
  const double m = std::ceil(C * std::pow(nd, 1.0 - 2.0 / kappa) * std::log(nd + 1.0));
  return std::max<std::size_t>(1, static_cast<std::size_t>(m));
}

namespace {

SketchMatrix make_sketch(std::size_t n, double kappa, std::size_t m, Seed seed, bool identity) {
  SketchMatrix s;
  s.kappa = kappa;
  s.n = n;
  s.seed = seed;
  s.m = identity ? n : m;
  s.scale.resize(n);
  s.bucket.resize(n);
  StreamRng buckets(seed.value, kBucketStream);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = counter_rng::exponential(seed.value, kScaleStream, i);
    const bool negative = (counter_rng::bits(seed.value, kSignStream, i) & 1u) != 0;
    s.scale[i] = (negative ? -1.0 : 1.0) * std::pow(e, -1.0 / kappa);
    s.bucket[i] = static_cast<std::uint32_t>(identity ? i : buckets.below(s.m));
  }
  return s;
}

}  // namespace

SketchMatrix sample_sketch_rows(std::size_t n, double kappa, std::size_t m, Seed seed) {
  check(n, kappa);
  if (m < 1) throw std::invalid_argument("sketch needs m >= 1");
  return make_sketch(n, kappa, m, seed, m >= n);
}

SketchMatrix sample_sketch(std::size_t n, double kappa, Seed seed, double C) {
  return make_sketch(n, kappa, sketch_rows(n, kappa, C), seed, false);
}

std::vector<double> SketchMatrix::apply(std::span<const double> x) const {
  if (x.size() != n) throw std::invalid_argument("sketch applied to a vector of the wrong length");
  std::vector<double> y(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) y[bucket[i]] += scale[i] * x[i];
  return y;
}

double SketchMatrix::calibration() const { return std::pow(std::numbers::ln2, 1.0 / kappa); }

}  // namespace ipsjoin::sketch
