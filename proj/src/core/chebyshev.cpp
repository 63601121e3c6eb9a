#include "ipsjoin/core/chebyshev.hpp"

#include <limits>
#include <stdexcept>

namespace ipsjoin {

double chebyshev(unsigned q, double x) {
  if (q == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (unsigned k = 2; k <= q; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::int64_t scaled_chebyshev(unsigned q, std::int64_t u, std::int64_t b) {
  if (q == 0) return 1;
  using wide = __int128;
  constexpr wide lo = std::numeric_limits<std::int64_t>::min();
  constexpr wide hi = std::numeric_limits<std::int64_t>::max();
  const wide b2 = static_cast<wide>(b) * b;
  wide prev = 1;
  wide cur = u;
  for (unsigned k = 2; k <= q; ++k) {
    const wide next = 2 * static_cast<wide>(u) * cur - b2 * prev;
    if (next < lo || next > hi) throw std::overflow_error("scaled_chebyshev: int64 overflow");
    prev = cur;
    cur = next;
  }
  return static_cast<std::int64_t>(cur);
}

}  // namespace ipsjoin
