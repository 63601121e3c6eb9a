#include "ipsjoin/embeddings/profile.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ipsjoin/core/chebyshev.hpp"
#include "ipsjoin/embeddings/embeddings.hpp"

namespace ipsjoin::embeddings {
namespace {

// (2d)^q T_q(1 + 1/d), exact while it fits in int64.
double family2_s(std::size_t d, unsigned q) {
  const auto b = static_cast<std::int64_t>(2 * d);
  try {
    return static_cast<double>(scaled_chebyshev(q, b + 2, b));
  } catch (const std::overflow_error&) {
    long double prev = 1.0L;
    long double cur = static_cast<long double>(b + 2);
    for (unsigned k = 2; k <= q; ++k) {
      const long double next = 2.0L * (b + 2) * cur - static_cast<long double>(b) * b * prev;
      prev = cur;
      cur = next;
    }
    return static_cast<double>(cur);
  }
}

double log_ratio(double s, double cs, double d2) {
  if (cs == 0.0) return 0.0;
  return std::log(s / d2) / std::log(cs / d2);
}

}  // namespace

double GapEmbeddingProfile::ratio() const { return log_ratio(s, cs, static_cast<double>(d2)); }

double GapEmbeddingProfile::Nominal::ratio() const { return log_ratio(s, cs, d2); }

GapEmbeddingProfile profile(int family, std::size_t d, std::uint64_t param) {
  validate_family(family, param, d);
  GapEmbeddingProfile p;
  p.family = family;
  p.d1 = d;
  switch (family) {
    case 1:
      p.param = 0;
      p.d2 = 4 * d - 4;
      p.cs = 0.0;
      p.s = 4.0;
      p.domain = Domain::kSign;
      p.is_signed = true;
      break;
    case 2: {
      const auto q = static_cast<unsigned>(param);
      const double dd = static_cast<double>(d);
      p.param = q;
      p.d2 = embed2_dimension(d, q);
      p.cs = std::pow(2.0 * dd, q);
      p.s = family2_s(d, q);
      p.domain = Domain::kSign;
      p.is_signed = false;
      GapEmbeddingProfile::Nominal nominal;
      nominal.d2 = std::pow(9.0 * dd, q);
      nominal.cs = p.cs;
      nominal.s = p.cs * std::exp(q / std::sqrt(dd)) / 2.0;
      p.nominal = nominal;
      p.dimension_bound_holds = static_cast<long double>(p.d2) <= std::pow(9.0L * dd, q);
      break;
    }
    case 3:
      p.param = param;
      p.d2 = embed3_dimension(d, param);
      p.cs = static_cast<double>(param - 1);
      p.s = static_cast<double>(param);
      p.domain = Domain::kBinary;
      p.is_signed = false;
      break;
  }
  return p;
}

double family2_ratio_closed_form(std::size_t d, unsigned q) {
  const double l92 = std::log(4.5);
  return 1.0 - 1.0 / (l92 * std::sqrt(static_cast<double>(d))) + std::log(2.0) / (q * l92);
}

double family3_ratio_closed_form(std::size_t d, std::size_t k) {
  if (k < 2) throw std::invalid_argument("family 3 closed form needs k >= 2");
  const double kk = static_cast<double>(k);
  const double t = kk * std::log2(1.0 + 1.0 / (kk - 1.0));
  return 1.0 - t / (static_cast<double>(d) + t);
}

}  // namespace ipsjoin::embeddings
