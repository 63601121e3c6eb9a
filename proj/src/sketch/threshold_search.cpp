#include "ipsjoin/sketch/threshold_search.hpp"

#include <cmath>
#include <stdexcept>

#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::sketch {

namespace {

void check(double s, double c, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
}

}  // namespace

std::size_t schedule_length(double s, double c, double gamma) {
  check(s, c, gamma);
  if (gamma >= s) return 0;
  const double steps = std::log(s / gamma) / std::log(1.0 / c);
  return static_cast<std::size_t>(std::ceil(steps - 1e-9));
}

CmipsResult cmips_from_threshold_search(const ThresholdSearch& search, std::span<const double> q, double s,
                                        double c, double gamma) {
  const std::size_t last = schedule_length(s, c, gamma);
  CmipsResult result;
  std::vector<double> scaled(q.begin(), q.end());
  double factor = 1.0;
  for (std::size_t i = 0; i <= last; ++i) {
    for (std::size_t t = 0; t < q.size(); ++t) scaled[t] = q[t] * factor;
    ++result.queries;
    if (auto hit = search(scaled)) {
      result.index = hit;
      result.step = i;
      return result;
    }
    factor /= c;
  }
  return result;
}

ThresholdSearch exact_threshold_search(const std::vector<RealVector>& P, double s, double c) {
  check(s, c, 1.0);
  const double cs = c * s;
  return [&P, cs](std::span<const double> query) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < P.size(); ++i)
      if (std::abs(simd::dot(P[i].values(), query)) >= cs) return i;
    return std::nullopt;
  };
}

}  // namespace ipsjoin::sketch
