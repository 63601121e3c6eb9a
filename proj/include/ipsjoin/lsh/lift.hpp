#pragma once

#include "ipsjoin/core/vectors.hpp"

namespace ipsjoin::lsh {

/// Asymmetric map of the unit data ball and the radius-U query ball onto the
/// unit sphere in d+2 dimensions:
///   data  p -> (p, sqrt(1 - |p|^2), 0)
///   query q -> (q/U, 0, sqrt(1 - |q|^2/U^2))
/// so that lift_data(p) . lift_query(q) = p.q / U.
struct AsymmetricLift {
  double U = 1.0;

  /// Throws std::invalid_argument unless U >= 1.
  explicit AsymmetricLift(double U);

  /// Throws std::invalid_argument when |p| > 1 (beyond 1e-12 relative slack).
  RealVector data(const RealVector& p) const;
  /// Throws std::invalid_argument when |q| > U (beyond 1e-12 relative slack).
  RealVector query(const RealVector& q) const;
};

RealVector lift_data(const RealVector& p, double U);
RealVector lift_query(const RealVector& q, double U);

}  // namespace ipsjoin::lsh
