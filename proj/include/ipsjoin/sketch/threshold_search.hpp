#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ipsjoin/core/vectors.hpp"

namespace ipsjoin::sketch {

/// Unsigned (cs, s) search oracle: given a query, returns a data index whose
/// |p.q| >= cs whenever some |p.q| >= s, and may return nothing otherwise.
using ThresholdSearch = std::function<std::optional<std::size_t>(std::span<const double> query)>;

struct CmipsResult {
  std::optional<std::size_t> index;  // empty means "below gamma"
  std::size_t queries = 0;           // oracle calls issued
  std::size_t step = 0;              // i of the successful query q / c^i

  bool below_gamma() const noexcept { return !index.has_value(); }
};

/// Last schedule step ceil(log_{1/c}(s / gamma)), or 0 when gamma >= s.
std::size_t schedule_length(double s, double c, double gamma);

/// Issues q / c^i for i = 0, 1, ..., schedule_length(s, c, gamma) and returns
/// the first hit. Throws std::invalid_argument unless gamma > 0, s > 0 and
/// 0 < c < 1.
CmipsResult cmips_from_threshold_search(const ThresholdSearch& search, std::span<const double> q, double s,
                                        double c, double gamma = 0x1p-40);

/// Exact oracle over P: the lowest-index p with |p.q| >= cs.
ThresholdSearch exact_threshold_search(const std::vector<RealVector>& P, double s, double c);

}  // namespace ipsjoin::sketch
