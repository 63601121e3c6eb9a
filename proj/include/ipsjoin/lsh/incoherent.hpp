#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ipsjoin/core/vectors.hpp"
#include "ipsjoin/lsh/big_unsigned.hpp"

namespace ipsjoin::lsh {

/// Reed-Solomon incoherent family over F_q, q prime.
///
/// Index u (u < q^t) selects the polynomial P_u of degree < t whose
/// coefficients are the base-q digits of u (least significant digit = constant
/// term). Its vector lives in q*q dimensions with entry 1/sqrt(q) at position
/// a*q + P_u(a) for every a in F_q. Two distinct polynomials agree on at most
/// t-1 points, so distinct vectors have inner product m/q with m <= t-1.
struct IncoherentFamily {
  std::uint32_t q = 2;
  std::uint32_t t = 1;
  double epsilon = 0.0;  // (t-1)/q
  std::size_t dim = 4;   // q*q

  /// q^t, the number of distinct vectors.
  BigUnsigned capacity() const;
};

bool is_prime(std::uint32_t n);

/// Largest prime the (q, t) search will consider.
inline constexpr std::uint32_t kMaxIncoherentPrime = 1u << 16;

/// Smallest-dimension family with at least `count` vectors and coherence <= epsilon.
/// Throws std::invalid_argument unless 0 < epsilon < 1, and std::runtime_error
/// when no prime q <= 2^16 works.
IncoherentFamily build_incoherent(const BigUnsigned& count, double epsilon);
IncoherentFamily build_incoherent(std::uint64_t count, double epsilon);

/// Positions (sorted by a) of the q non-zero entries of vector u.
std::vector<std::size_t> incoherent_support(const IncoherentFamily& family, BigUnsigned u);
std::vector<std::size_t> incoherent_support(const IncoherentFamily& family, std::uint64_t u);

/// Dense vector u; throws std::out_of_range when u >= q^t.
RealVector incoherent_vector(const IncoherentFamily& family, const BigUnsigned& u);
RealVector incoherent_vector(const IncoherentFamily& family, std::uint64_t u);

/// Number of shared support positions: the exact inner product is overlap / q.
std::size_t incoherent_overlap(const IncoherentFamily& family, std::uint64_t u, std::uint64_t w);

}  // namespace ipsjoin::lsh
