#pragma once

namespace ipsjoin::lsh {

/// rho = 1/(2c'^2 - 1) = (1 - s/U) / (1 + (1 - 2c) s/U) for the sphere-lift
/// reduction into a data-dependent ANN structure, with the ANN distance
/// threshold r = sqrt(2(1 - s/U)) and approximation c' = sqrt((1 - cs/U)/(1 - s/U)).
struct DataDependentRho {
  double rho = 0.0;
  double r = 0.0;
  double c_prime = 0.0;  // +inf when s/U >= 1
};

/// Requires s_over_U > 0 and 0 < c <= 1. For s/U >= 1 returns rho = 0.
DataDependentRho rho_datadep(double s_over_U, double c);

/// ln(1 - acos(s)/pi) / ln(1 - acos(cs)/pi): the rho of hyperplane LSH applied
/// at the two thresholds (U = 1). Requires 0 < s < 1 and 0 < c <= 1.
double rho_simple(double s, double c);

}  // namespace ipsjoin::lsh
