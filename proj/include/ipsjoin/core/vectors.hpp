#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <type_traits>
#include <vector>

namespace ipsjoin {

enum class Domain { kBinary, kSign, kReal };

struct BinaryTag {};
struct SignTag {};

/// Packed vector over a two-letter alphabet, one bit per entry.
///
/// BinaryVector: bit set <=> entry 1, entries in {0,1}.
/// SignVector:   bit set <=> entry -1, entries in {-1,+1}.
///
/// Bits past dim() are always zero, so word-level popcounts give exact inner
/// products without masking.
template <typename Tag>
class BitVector {
 public:
  static constexpr bool kIsSign = std::is_same_v<Tag, SignTag>;

  BitVector() = default;

  /// Entries must be 0/1 (binary) or -1/+1 (sign); anything else throws.
  static BitVector from_entries(std::span<const int> entries);
  static BitVector from_entries(std::initializer_list<int> entries) {
    return from_entries(std::span<const int>(entries.begin(), entries.size()));
  }
  /// Constant vector: all ones (binary 1 or sign +1) when `one` is true,
  /// otherwise all zeros (binary) / all -1 (sign).
  static BitVector filled(std::size_t dim, bool one);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool bit(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  int operator[](std::size_t i) const noexcept {
    if constexpr (kIsSign) {
      return bit(i) ? -1 : 1;
    } else {
      return bit(i) ? 1 : 0;
    }
  }
  std::vector<int> entries() const;

  friend bool operator==(const BitVector& a, const BitVector& b) = default;

  /// Append-only construction in O(words) per appended block.
  class Builder {
   public:
    Builder() = default;
    explicit Builder(std::size_t reserve_bits) { words_.reserve((reserve_bits + 63) / 64); }

    void push_bit(bool b);
    void push_bits(bool b, std::size_t count);
    /// Appends v, with every bit flipped when `complement` is set.
    void append(const BitVector& v, bool complement = false);
    std::size_t size() const noexcept { return dim_; }
    BitVector finish() &&;

   private:
    std::vector<std::uint64_t> words_;
    std::size_t dim_ = 0;
  };

 private:
  std::vector<std::uint64_t> words_;
  std::size_t dim_ = 0;
};

using BinaryVector = BitVector<BinaryTag>;
using SignVector = BitVector<SignTag>;

/// Dense real vector.
class RealVector {
 public:
  RealVector() = default;
  explicit RealVector(std::vector<double> values) : values_(std::move(values)) {}
  RealVector(std::initializer_list<double> values) : values_(values) {}
  static RealVector zeros(std::size_t dim) { return RealVector(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }

  double norm() const;
  /// Throws std::invalid_argument when any entry is NaN or infinite.
  void check_finite() const;

  friend bool operator==(const RealVector& a, const RealVector& b) = default;

 private:
  std::vector<double> values_;
};

/// Exact inner products for the packed domains; dimension mismatch throws.
std::int64_t inner_product(const BinaryVector& x, const BinaryVector& y);
std::int64_t inner_product(const SignVector& x, const SignVector& y);
double inner_product(const RealVector& x, const RealVector& y);

// Combinators. All return new vectors.
BinaryVector concat(const BinaryVector& x, const BinaryVector& y);
SignVector concat(const SignVector& x, const SignVector& y);
RealVector concat(const RealVector& x, const RealVector& y);

BinaryVector repeat(const BinaryVector& x, std::size_t n);
SignVector repeat(const SignVector& x, std::size_t n);
RealVector repeat(const RealVector& x, std::size_t n);

/// Row-major vectorised outer product: result[i * y.dim() + j] = x[i] * y[j].
BinaryVector tensor(const BinaryVector& x, const BinaryVector& y);
SignVector tensor(const SignVector& x, const SignVector& y);
RealVector tensor(const RealVector& x, const RealVector& y);

/// Entry-wise negation of a sign vector.
SignVector negate(const SignVector& x);

}  // namespace ipsjoin
