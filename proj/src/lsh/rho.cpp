#include "ipsjoin/lsh/rho.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ipsjoin::lsh {

DataDependentRho rho_datadep(double x, double c) {
  if (!(x > 0.0)) throw std::invalid_argument("rho_datadep: s/U must be positive");
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("rho_datadep: c must lie in (0, 1]");
  DataDependentRho out;
  if (x >= 1.0) {
    out.rho = 0.0;
    out.r = 0.0;
    out.c_prime = std::numeric_limits<double>::infinity();
    return out;
  }
  const double denom = 1.0 + (1.0 - 2.0 * c) * x;
  if (!(denom > 0.0)) throw std::invalid_argument("rho_datadep: degenerate denominator");
  out.rho = (1.0 - x) / denom;
  out.r = std::sqrt(2.0 * (1.0 - x));
  out.c_prime = std::sqrt((1.0 - c * x) / (1.0 - x));
  return out;
}

double rho_simple(double s, double c) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("rho_simple: s must lie in (0, 1)");
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("rho_simple: c must lie in (0, 1]");
  const double p1 = 1.0 - std::acos(s) / std::numbers::pi;
  const double p2 = 1.0 - std::acos(c * s) / std::numbers::pi;
  return std::log(p1) / std::log(p2);
}

}  // namespace ipsjoin::lsh
