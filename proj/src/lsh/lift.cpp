#include "ipsjoin/lsh/lift.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::lsh {
namespace {

constexpr double kNormSlack = 1e-12;

// sqrt(1 - t) for t = squared norm ratio, clamping rounding noise at t ~ 1.
double complement_length(double t, double radius, const char* side) {
  if (t > 1.0 + 2 * kNormSlack) {
    std::ostringstream msg;
    msg << side << " vector has norm " << std::sqrt(t) * radius << " > " << radius;
    throw std::invalid_argument(msg.str());
  }
  return std::sqrt(std::max(0.0, 1.0 - t));
}

}  // namespace

AsymmetricLift::AsymmetricLift(double U_) : U(U_) {
  if (!(U >= 1.0) || !std::isfinite(U)) throw std::invalid_argument("query radius U must be >= 1");
}

RealVector AsymmetricLift::data(const RealVector& p) const {
  const double sq = simd::dot(p.values(), p.values());
  const double tail = complement_length(sq, 1.0, "data");
  std::vector<double> out(p.dim() + 2);
  std::copy(p.data().begin(), p.data().end(), out.begin());
  out[p.dim()] = tail;
  out[p.dim() + 1] = 0.0;
  return RealVector(std::move(out));
}

RealVector AsymmetricLift::query(const RealVector& q) const {
  std::vector<double> out(q.dim() + 2);
  for (std::size_t i = 0; i < q.dim(); ++i) out[i] = q[i] / U;
  const std::span<const double> scaled(out.data(), q.dim());
  const double tail = complement_length(simd::dot(scaled, scaled), U, "query");
  out[q.dim()] = 0.0;
  out[q.dim() + 1] = tail;
  return RealVector(std::move(out));
}

RealVector lift_data(const RealVector& p, double U) { return AsymmetricLift(U).data(p); }
RealVector lift_query(const RealVector& q, double U) { return AsymmetricLift(U).query(q); }

}  // namespace ipsjoin::lsh
