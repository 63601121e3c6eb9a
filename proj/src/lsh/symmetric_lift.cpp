#include "ipsjoin/lsh/symmetric_lift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::lsh {

void FixedPointCodec::validate() const {
  if (k < 1 || k > 32) throw std::invalid_argument("fixed-point codec needs 1 <= k <= 32");
  if (d < 1) throw std::invalid_argument("fixed-point codec needs d >= 1");
}

bool FixedPointCodec::representable(double value) const {
  const double scaled = std::ldexp(value, static_cast<int>(k) - 1);
  const double half_range = std::ldexp(1.0, static_cast<int>(k) - 1);
  return std::isfinite(scaled) && scaled == std::floor(scaled) && scaled >= -half_range && scaled < half_range;
}

RealVector FixedPointCodec::quantize(const RealVector& x) const {
  validate();
  const double half_range = std::ldexp(1.0, static_cast<int>(k) - 1);
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double m = std::clamp(std::nearbyint(x[i] * half_range), -half_range, half_range - 1.0);
    out[i] = m / half_range;
  }
  return RealVector(std::move(out));
}

BigUnsigned FixedPointCodec::index(const RealVector& x) const {
  validate();
  if (x.dim() != d) throw std::invalid_argument("codec: vector dimension does not match d");
  const std::uint64_t mask = k == 32 ? 0xffffffffull : ((std::uint64_t{1} << k) - 1);
  BigUnsigned u;
  for (std::size_t i = 0; i < d; ++i) {
    if (!representable(x[i])) {
      throw std::invalid_argument("coordinate " + std::to_string(i) + " is not a " + std::to_string(k) +
                                  "-bit fixed-point value");
    }
    const auto m = static_cast<std::int64_t>(std::ldexp(x[i], static_cast<int>(k) - 1));
    u.shift_in(static_cast<std::uint32_t>(static_cast<std::uint64_t>(m) & mask), k);
  }
  return u;
}

IncoherentFamily build_incoherent_for(const FixedPointCodec& codec, double epsilon) {
  codec.validate();
  return build_incoherent(codec.index_count(), epsilon);
}

RealVector symmetric_lift(const RealVector& x, const FixedPointCodec& codec, const IncoherentFamily& family) {
  const BigUnsigned u = codec.index(x);
  if (family.capacity() < codec.index_count()) {
    throw std::invalid_argument("incoherent family has fewer vectors than the codec has indices");
  }
  const double sq = simd::dot(x.values(), x.values());
  if (sq > 1.0 + 2e-12) throw std::invalid_argument("symmetric_lift: input norm exceeds 1");
  const double scale = std::sqrt(std::max(0.0, 1.0 - sq));

  std::vector<double> out(x.dim() + family.dim, 0.0);
  std::copy(x.data().begin(), x.data().end(), out.begin());
  if (scale > 0.0) {
    const double entry = scale / std::sqrt(static_cast<double>(family.q));
    for (const std::size_t pos : incoherent_support(family, u)) out[x.dim() + pos] = entry;
  }
  return RealVector(std::move(out));
}

}  // namespace ipsjoin::lsh
