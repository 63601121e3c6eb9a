#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ipsjoin/core/vectors.hpp"

namespace ipsjoin::embeddings {

/// (d1, d2, cs, s) descriptor of one gap-embedding instance.
///
/// cs and s are the construction-level values: every orthogonal pair embeds to
/// a product >= s and every non-orthogonal pair to a product (absolute value
/// for unsigned families) <= cs.
struct GapEmbeddingProfile {
  int family = 0;
  std::uint64_t param = 0;  // q for family 2, k for family 3, 0 for family 1
  std::size_t d1 = 0;
  std::uint64_t d2 = 0;     // saturates at UINT64_MAX
  double cs = 0.0;
  double s = 0.0;
  Domain domain = Domain::kSign;
  bool is_signed = false;

  /// cs / s
  double c() const { return cs / s; }
  /// log(s/d2) / log(cs/d2); 0 when cs = 0 (the limit as cs -> 0).
  double ratio() const;

  /// Family 2 only: the nominal tuple (d, (9d)^q, (2d)^q, (2d)^q e^{q/sqrt d} / 2)
  /// and whether the exact dimension respects D_q <= (9d)^q.
  struct Nominal {
    double d2 = 0.0;
    double cs = 0.0;
    double s = 0.0;
    double ratio() const;
  };
  std::optional<Nominal> nominal;
  std::optional<bool> dimension_bound_holds;
};

/// Throws std::invalid_argument for invalid family parameters.
GapEmbeddingProfile profile(int family, std::size_t d, std::uint64_t param = 0);

/// 1 - 1/(ln(9/2) sqrt d) + ln 2 / (q ln(9/2)), the family 2 normalized ratio.
double family2_ratio_closed_form(std::size_t d, unsigned q);
/// 1 - k log2(1 + 1/(k-1)) / (d + k log2(1 + 1/(k-1))), family 3, k >= 2.
double family3_ratio_closed_form(std::size_t d, std::size_t k);

}  // namespace ipsjoin::embeddings
