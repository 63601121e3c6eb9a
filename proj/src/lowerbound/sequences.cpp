#include "ipsjoin/lowerbound/sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ipsjoin::lowerbound {

namespace {

constexpr double kNormSlack = 1e-12;

void check_common(double s, double c, double U) {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("s must be positive");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
  if (!(U >= 1.0) || !std::isfinite(U)) throw std::invalid_argument("U must be >= 1");
}

void check_blocks(std::size_t d) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("d must be even and >= 2");
}

bool inside(const RealVector& v, double radius) { return v.norm() <= radius * (1.0 + kNormSlack); }

}  // namespace

std::string_view case_name(SequenceCase kind) {
  switch (kind) {
    case SequenceCase::k1a: return "1a";
    case SequenceCase::k1b: return "1b";
    case SequenceCase::k2: return "2";
    case SequenceCase::k3: return "3";
  }
  return "?";
}

SequenceCase parse_case(std::string_view name) {
  if (name == "1a") return SequenceCase::k1a;
  if (name == "1b") return SequenceCase::k1b;
  if (name == "2") return SequenceCase::k2;
  if (name == "3") return SequenceCase::k3;
  throw std::invalid_argument("unknown sequence case '" + std::string(name) + "'");
}

std::size_t case1_length(double s, double c, double U) {
  check_common(s, c, U);
  if (s > c * U) throw std::invalid_argument("case 1 needs s <= cU");
  const double steps = std::log(U / s) / std::log(1.0 / c);
  return static_cast<std::size_t>(std::floor(steps + 1e-9)) + 1;
}

HardSequence seq_case1_1d(double s, double c, double U) {
  const std::size_t n = case1_length(s, c, U);
  HardSequence seq;
  seq.kind = SequenceCase::k1a;
  seq.s = s;
  seq.c = c;
  seq.U = U;
  seq.dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = std::pow(c, static_cast<double>(i));
    seq.Q.push_back(RealVector{U * ci});
    seq.P.push_back(RealVector{s / (U * ci)});
  }
  seq.block_lengths = {n};
  return seq;
}

HardSequence seq_case1_blocked(double s, double c, double U, std::size_t d) {
  check_common(s, c, U);
  check_blocks(d);
  if (s > c * U || s > U / (2.0 * std::sqrt(static_cast<double>(d))))
    throw std::invalid_argument("case 1b needs s <= min(cU, U / (2 sqrt d))");
  const std::size_t blocks = d / 2;
  const std::size_t m = case1_length(s, c, U);
  HardSequence seq;
  seq.kind = SequenceCase::k1b;
  seq.s = s;
  seq.c = c;
  seq.U = U;
  seq.dim = d;
  for (std::size_t k = 0; k < blocks; ++k) {
    std::size_t kept = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double ci = std::pow(c, static_cast<double>(i));
      RealVector q = RealVector::zeros(d);
      RealVector p = RealVector::zeros(d);
      q.values()[2 * k] = U * ci;
      for (std::size_t t = k; t < blocks; ++t) q.values()[2 * t + 1] = 2.0 * s;
      p.values()[2 * k] = s / (U * ci);
      if (k > 0) p.values()[2 * k - 1] = 0.5;
      if (!inside(q, U) || !inside(p, 1.0)) continue;
      seq.Q.push_back(std::move(q));
      seq.P.push_back(std::move(p));
      ++kept;
    }
    seq.block_lengths.push_back(kept);
  }
  return seq;
}

std::size_t case2_min_block(double s, double c, double U) {
  check_common(s, c, U);
  return static_cast<std::size_t>(std::floor(0.5 * std::sqrt(U / (s * (1.0 - c)))));
}

HardSequence seq_case2(double s, double c, double U, std::size_t d) {
  check_common(s, c, U);
  check_blocks(d);
  if (s > U / (2.0 * static_cast<double>(d))) throw std::invalid_argument("case 2 needs s <= U / (2d)");
  const std::size_t blocks = d / 2;
  const double a = std::sqrt(s * U);
  const double b = std::sqrt(s * U * (1.0 - c));
  const double e = std::sqrt(s / U);
  const double f = std::sqrt(s * (1.0 - c) / U);
  HardSequence seq;
  seq.kind = SequenceCase::k2;
  seq.s = s;
  seq.c = c;
  seq.U = U;
  seq.dim = d;
  for (std::size_t k = 0; k < blocks; ++k) {
    std::size_t kept = 0;
    for (std::size_t i = 0;; ++i) {
      const double di = static_cast<double>(i);
      RealVector q = RealVector::zeros(d);
      RealVector p = RealVector::zeros(d);
      q.values()[2 * k] = a * (1.0 - (1.0 - c) * di);
      q.values()[2 * k + 1] = b;
      for (std::size_t t = k + 1; t < blocks; ++t) q.values()[2 * t] = a;
      p.values()[2 * k] = e;
      p.values()[2 * k + 1] = di * f;
      if (!inside(q, U) || !inside(p, 1.0)) break;
      seq.Q.push_back(std::move(q));
      seq.P.push_back(std::move(p));
      ++kept;
    }
    seq.block_lengths.push_back(kept);
  }
  return seq;
}

HardSequence seq_case3(double s, double U, double c) {
  check_common(s, c, U);
  if (s > U / 8.0) throw std::invalid_argument("case 3 needs s <= U/8");
  const auto L = static_cast<unsigned>(std::floor(std::sqrt(U / (8.0 * s)) + 1e-9));
  if (L < 1 || L > 20) throw std::invalid_argument("case 3 needs 1 <= floor(sqrt(U/8s)) <= 20");
  const std::uint64_t n = std::uint64_t{1} << L;
  const double epsilon = c / (2.0 * L * L);
  // One vector per nonempty bit prefix: prefixes of length l+1 start at 2^{l+1} - 2.
  const std::uint64_t count = 2 * n - 2;
  const lsh::IncoherentFamily family = lsh::build_incoherent(count, epsilon);
  auto z_index = [](unsigned length, std::uint64_t prefix) { return ((std::uint64_t{1} << length) - 2) + prefix; };

  const double qa = std::sqrt(2.0 * s * U);
  const double pa = std::sqrt(2.0 * s / U);
  auto build = [&](std::uint64_t x, bool query) {
    RealVector v = RealVector::zeros(family.dim);
    for (unsigned l = 0; l < L; ++l) {
      const unsigned bit = static_cast<unsigned>((x >> (L - 1 - l)) & 1u);
      const unsigned used = query ? 1u - bit : bit;
      if (used == 0) continue;
      // Prefix b_0 .. b_{l-1} followed by the used bit value at position l.
      const std::uint64_t head = x >> (L - l);
      const std::uint64_t prefix = (head << 1) | (query ? 1u - bit : bit);
      for (std::size_t pos : lsh::incoherent_support(family, z_index(l + 1, prefix)))
        v.values()[pos] += (query ? qa : pa) / std::sqrt(static_cast<double>(family.q));
    }
    return v;
  };

  HardSequence seq;
  seq.kind = SequenceCase::k3;
  seq.s = s;
  seq.c = c;
  seq.U = U;
  seq.dim = family.dim;
  seq.family = family;
  seq.epsilon = epsilon;
  for (std::uint64_t i = 0; i + 1 < n; ++i) {
    seq.Q.push_back(build(i, true));
    seq.P.push_back(build(i + 1, false));
  }
  seq.block_lengths = {static_cast<std::size_t>(n - 1)};
  return seq;
}

}  // namespace ipsjoin::lowerbound
