#include "ipsjoin/lsh/incoherent.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace ipsjoin::lsh {
namespace {

std::uint32_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  for (std::uint64_t c = n; c <= kMaxIncoherentPrime; ++c) {
    if (is_prime(static_cast<std::uint32_t>(c))) return static_cast<std::uint32_t>(c);
  }
  return 0;
}

BigUnsigned power(std::uint32_t q, std::uint32_t t) {
  BigUnsigned r(1);
  for (std::uint32_t i = 0; i < t; ++i) r.mul_small(q);
  return r;
}

}  // namespace

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

BigUnsigned IncoherentFamily::capacity() const { return power(q, t); }

IncoherentFamily build_incoherent(const BigUnsigned& count, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("incoherent family needs 0 < epsilon < 1");
  std::optional<IncoherentFamily> best;
  for (std::uint32_t t = 1;; ++t) {
    // (t-1)/q <= epsilon  <=>  q >= (t-1)/epsilon
    const double q_floor = std::ceil(static_cast<double>(t - 1) / epsilon - 1e-12);
    if (q_floor > kMaxIncoherentPrime) break;
    // q^t >= count needs q >= 2^{(bits-1)/t}.
    const double size_floor = std::floor(std::exp2(static_cast<double>(count.bit_length() > 0 ? count.bit_length() - 1 : 0) / t));
    const double start = std::max({2.0, static_cast<double>(t), q_floor, size_floor});
    if (start > kMaxIncoherentPrime) continue;
    std::uint32_t q = next_prime(static_cast<std::uint64_t>(start));
    while (q != 0 && power(q, t) < count) q = next_prime(static_cast<std::uint64_t>(q) + 1);
    if (q == 0) continue;
    const std::size_t dim = static_cast<std::size_t>(q) * q;
    if (!best || dim < best->dim) {
      best = IncoherentFamily{q, t, static_cast<double>(t - 1) / q, dim};
    }
    // Larger t only helps while the coherence floor still allows a smaller q.
    if (best && q_floor * q_floor >= static_cast<double>(best->dim)) break;
  }
  if (!best) throw std::runtime_error("no incoherent family with prime q <= 65536 meets the request");
  return *best;
}

IncoherentFamily build_incoherent(std::uint64_t count, double epsilon) {
  return build_incoherent(BigUnsigned(count), epsilon);
}

std::vector<std::size_t> incoherent_support(const IncoherentFamily& family, BigUnsigned u) {
  if (family.capacity() <= u) throw std::out_of_range("incoherent index out of range");
  std::vector<std::uint64_t> coeffs(family.t);
  for (auto& c : coeffs) c = u.divmod_small(family.q);
  std::vector<std::size_t> support(family.q);
  for (std::uint64_t a = 0; a < family.q; ++a) {
    // Horner evaluation of P_u(a) mod q.
    std::uint64_t value = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) value = (value * a + *it) % family.q;
    support[a] = static_cast<std::size_t>(a * family.q + value);
  }
  return support;
}

std::vector<std::size_t> incoherent_support(const IncoherentFamily& family, std::uint64_t u) {
  return incoherent_support(family, BigUnsigned(u));
}

RealVector incoherent_vector(const IncoherentFamily& family, const BigUnsigned& u) {
  RealVector v = RealVector::zeros(family.dim);
  const double entry = 1.0 / std::sqrt(static_cast<double>(family.q));
  for (const std::size_t pos : incoherent_support(family, u)) v[pos] = entry;
  return v;
}

RealVector incoherent_vector(const IncoherentFamily& family, std::uint64_t u) {
  return incoherent_vector(family, BigUnsigned(u));
}

std::size_t incoherent_overlap(const IncoherentFamily& family, std::uint64_t u, std::uint64_t w) {
  const auto a = incoherent_support(family, u);
  const auto b = incoherent_support(family, w);
  std::size_t shared = 0;
  for (std::size_t i = 0; i < a.size(); ++i) shared += a[i] == b[i] ? 1 : 0;
  return shared;
}

}  // namespace ipsjoin::lsh
