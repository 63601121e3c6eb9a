#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace ipsjoin::lsh {

/// Minimal arbitrary-width unsigned integer: enough to hold a d*k-bit
/// fixed-point code and take its base-q digits.
class BigUnsigned {
 public:
  BigUnsigned() = default;
  explicit BigUnsigned(std::uint64_t v) {
    while (v != 0) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      v >>= 32;
    }
  }

  static BigUnsigned power_of_two(std::size_t bits) {
    BigUnsigned r;
    r.limbs_.assign(bits / 32 + 1, 0);
    r.limbs_.back() = std::uint32_t{1} << (bits % 32);
    return r;
  }

  bool is_zero() const noexcept { return limbs_.empty(); }

  std::size_t bit_length() const noexcept {
    if (limbs_.empty()) return 0;
    return 32 * (limbs_.size() - 1) + (32 - static_cast<std::size_t>(__builtin_clz(limbs_.back())));
  }

  /// this = this * 2^bits + value, value < 2^bits, bits <= 32.
  void shift_in(std::uint32_t value, unsigned bits) {
    std::uint64_t carry = value;
    for (auto& limb : limbs_) {
      const std::uint64_t wide = (static_cast<std::uint64_t>(limb) << bits) | carry;
      limb = static_cast<std::uint32_t>(wide);
      carry = wide >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  void mul_small(std::uint32_t m) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
      const std::uint64_t wide = static_cast<std::uint64_t>(limb) * m + carry;
      limb = static_cast<std::uint32_t>(wide);
      carry = wide >> 32;
    }
    if (carry != 0) limbs_.push_back(static_cast<std::uint32_t>(carry));
    trim();
  }

  /// Divides in place, returns the remainder.
  std::uint32_t divmod_small(std::uint32_t divisor) {
    std::uint64_t rem = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
      const std::uint64_t cur = (rem << 32) | *it;
      *it = static_cast<std::uint32_t>(cur / divisor);
      rem = cur % divisor;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
  }

  friend bool operator==(const BigUnsigned&, const BigUnsigned&) = default;
  friend bool operator<(const BigUnsigned& a, const BigUnsigned& b) {
    if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
    return std::lexicographical_compare(a.limbs_.rbegin(), a.limbs_.rend(), b.limbs_.rbegin(), b.limbs_.rend());
  }
  friend bool operator<=(const BigUnsigned& a, const BigUnsigned& b) { return !(b < a); }

 private:
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<std::uint32_t> limbs_;  // little-endian
};

}  // namespace ipsjoin::lsh
