#pragma once

#include <cstdint>

namespace ipsjoin {

/// T_q(x), Chebyshev polynomial of the first kind, by the three-term
/// recurrence T_q = 2x T_{q-1} - T_{q-2}.
double chebyshev(unsigned q, double x);

/// b^q * T_q(u / b) for integers u, b, computed exactly with the scaled
/// recurrence r_q = 2u r_{q-1} - b^2 r_{q-2}, r_0 = 1, r_1 = u.
/// Throws std::overflow_error when the value leaves the int64 range.
std::int64_t scaled_chebyshev(unsigned q, std::int64_t u, std::int64_t b);

}  // namespace ipsjoin
