#include "ipsjoin/core/vectors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin {
namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

template <typename Tag>
BitVector<Tag> BitVector<Tag>::from_entries(std::span<const int> entries) {
  Builder b(entries.size());
  for (const int e : entries) {
    if constexpr (kIsSign) {
      if (e != 1 && e != -1) throw std::invalid_argument("sign vector entry must be -1 or +1");
      b.push_bit(e == -1);
    } else {
      if (e != 0 && e != 1) throw std::invalid_argument("binary vector entry must be 0 or 1");
      b.push_bit(e == 1);
    }
  }
  return std::move(b).finish();
}

template <typename Tag>
BitVector<Tag> BitVector<Tag>::filled(std::size_t dim, bool one) {
  Builder b(dim);
  // Sign +1 is stored as a clear bit.
  b.push_bits(kIsSign ? !one : one, dim);
  return std::move(b).finish();
}

template <typename Tag>
std::vector<int> BitVector<Tag>::entries() const {
  std::vector<int> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)[i];
  return out;
}

template <typename Tag>
void BitVector<Tag>::Builder::push_bit(bool b) {
  const std::size_t offset = dim_ & 63;
  if (offset == 0) words_.push_back(0);
  if (b) words_.back() |= std::uint64_t{1} << offset;
  ++dim_;
}

template <typename Tag>
void BitVector<Tag>::Builder::push_bits(bool b, std::size_t count) {
  // Fill the partial word, then whole words.
  while (count > 0 && (dim_ & 63) != 0) {
    push_bit(b);
    --count;
  }
  const std::uint64_t fill = b ? ~std::uint64_t{0} : 0;
  while (count >= 64) {
    words_.push_back(fill);
    dim_ += 64;
    count -= 64;
  }
  while (count > 0) {
    push_bit(b);
    --count;
  }
}

template <typename Tag>
void BitVector<Tag>::Builder::append(const BitVector& v, bool complement) {
  if (v.dim_ == 0) return;
  const std::uint64_t flip = complement ? ~std::uint64_t{0} : 0;
  const std::size_t shift = dim_ & 63;
  const std::size_t full_words = v.dim_ / 64;
  const std::size_t tail_bits = v.dim_ & 63;
  const std::size_t total_words = full_words + (tail_bits != 0 ? 1 : 0);

  words_.reserve((dim_ + v.dim_ + 63) / 64);
  for (std::size_t w = 0; w < total_words; ++w) {
    std::uint64_t word = v.words_[w] ^ flip;
    if (w == full_words) word &= (std::uint64_t{1} << tail_bits) - 1;  // tail word
    if (shift == 0) {
      words_.push_back(word);
    } else {
      words_.back() |= word << shift;
      const std::size_t bits_in_word = (w == full_words) ? tail_bits : 64;
      if (bits_in_word + shift > 64) words_.push_back(word >> (64 - shift));
    }
  }
  dim_ += v.dim_;
}

template <typename Tag>
BitVector<Tag> BitVector<Tag>::Builder::finish() && {
  BitVector v;
  v.words_ = std::move(words_);
  v.dim_ = dim_;
  words_.clear();
  dim_ = 0;
  return v;
}

template class BitVector<BinaryTag>;
template class BitVector<SignTag>;

double RealVector::norm() const { return std::sqrt(simd::dot(values_, values_)); }

void RealVector::check_finite() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("non-finite entry at coordinate " + std::to_string(i));
    }
  }
}

std::int64_t inner_product(const BinaryVector& x, const BinaryVector& y) {
  require_same_dim(x.dim(), y.dim(), "inner_product");
  return static_cast<std::int64_t>(simd::popcount_and(x.words(), y.words()));
}

std::int64_t inner_product(const SignVector& x, const SignVector& y) {
  require_same_dim(x.dim(), y.dim(), "inner_product");
  const auto disagreements = static_cast<std::int64_t>(simd::popcount_xor(x.words(), y.words()));
  return static_cast<std::int64_t>(x.dim()) - 2 * disagreements;
}

double inner_product(const RealVector& x, const RealVector& y) {
  require_same_dim(x.dim(), y.dim(), "inner_product");
  return simd::dot(x.values(), y.values());
}

namespace {

template <typename V>
V concat_bits(const V& x, const V& y) {
  typename V::Builder b(x.dim() + y.dim());
  b.append(x);
  b.append(y);
  return std::move(b).finish();
}

template <typename V>
V repeat_bits(const V& x, std::size_t n) {
  typename V::Builder b(x.dim() * n);
  for (std::size_t i = 0; i < n; ++i) b.append(x);
  return std::move(b).finish();
}

}  // namespace

BinaryVector concat(const BinaryVector& x, const BinaryVector& y) { return concat_bits(x, y); }
SignVector concat(const SignVector& x, const SignVector& y) { return concat_bits(x, y); }
RealVector concat(const RealVector& x, const RealVector& y) {
  std::vector<double> out(x.data());
  out.insert(out.end(), y.data().begin(), y.data().end());
  return RealVector(std::move(out));
}

BinaryVector repeat(const BinaryVector& x, std::size_t n) { return repeat_bits(x, n); }
SignVector repeat(const SignVector& x, std::size_t n) { return repeat_bits(x, n); }
RealVector repeat(const RealVector& x, std::size_t n) {
  std::vector<double> out;
  out.reserve(x.dim() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), x.data().begin(), x.data().end());
  return RealVector(std::move(out));
}

BinaryVector tensor(const BinaryVector& x, const BinaryVector& y) {
  BinaryVector::Builder b(x.dim() * y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x.bit(i)) {
      b.append(y);
    } else {
      b.push_bits(false, y.dim());
    }
  }
  return std::move(b).finish();
}

SignVector tensor(const SignVector& x, const SignVector& y) {
  SignVector::Builder b(x.dim() * y.dim());
  // x_i = -1 flips the sign of the whole y block.
  for (std::size_t i = 0; i < x.dim(); ++i) b.append(y, x.bit(i));
  return std::move(b).finish();
}

RealVector tensor(const RealVector& x, const RealVector& y) {
  std::vector<double> out;
  out.reserve(x.dim() * y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    for (std::size_t j = 0; j < y.dim(); ++j) out.push_back(x[i] * y[j]);
  }
  return RealVector(std::move(out));
}

SignVector negate(const SignVector& x) {
  SignVector::Builder b(x.dim());
  b.append(x, true);
  return std::move(b).finish();
}

}  // namespace ipsjoin
