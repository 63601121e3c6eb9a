#include "ipsjoin/embeddings/embeddings.hpp"

#include <limits>

namespace ipsjoin::embeddings {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  return __builtin_mul_overflow(a, b, &r) ? kSaturated : r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  return __builtin_add_overflow(a, b, &r) ? kSaturated : r;
}

void check_budget(std::uint64_t requested, Budget budget) {
  if (requested > budget.max_entries) throw BudgetExceeded(requested, budget.max_entries);
}

// Per-coordinate table shared by embeddings 1 and 2, with set bit = -1:
//   data  0 -> ( 1,-1,-1)   1 -> ( 1, 1, 1)
//   query 0 -> ( 1, 1,-1)   1 -> (-1,-1,-1)
void push_coordinate(SignVector::Builder& b, bool one, Side side) {
  if (side == Side::kData) {
    b.push_bit(false);
    b.push_bit(!one);
    b.push_bit(!one);
  } else {
    b.push_bit(one);
    b.push_bit(one);
    b.push_bit(true);
  }
}

SignVector embed1(const BinaryVector& x, Side side) {
  const std::size_t d = x.dim();
  if (d < 4) throw std::invalid_argument("embedding 1 needs d >= 4, got d = " + std::to_string(d));
  SignVector::Builder b(4 * d - 4);
  for (std::size_t i = 0; i < d; ++i) push_coordinate(b, x.bit(i), side);
  // Translation by -(d-4): ones on the data side, minus ones on the query side.
  b.push_bits(side == Side::kQuery, d - 4);
  return std::move(b).finish();
}

SignVector embed2(const BinaryVector& x, unsigned q, Budget budget, Side side) {
  const std::size_t d = x.dim();
  if (d < 2) throw std::invalid_argument("embedding 2 needs d >= 2, got d = " + std::to_string(d));
  if (q < 1) throw std::invalid_argument("embedding 2 needs Chebyshev order q >= 1");
  check_budget(embed2_dimension(d, q), budget);

  SignVector::Builder base_builder(4 * d + 2);
  for (std::size_t i = 0; i < d; ++i) push_coordinate(base_builder, x.bit(i), side);
  base_builder.push_bits(false, d + 2);
  const SignVector base = std::move(base_builder).finish();

  const std::size_t pad_repeats = (2 * d) * (2 * d);
  const bool negate_pad = side == Side::kQuery;
  SignVector older = SignVector::filled(1, true);  // level q-2
  SignVector prev = base;                           // level q-1
  for (unsigned level = 2; level <= q; ++level) {
    SignVector::Builder b(static_cast<std::size_t>(embed2_dimension(d, level)));
    for (int copy = 0; copy < 2; ++copy) {
      for (std::size_t i = 0; i < base.dim(); ++i) b.append(prev, base.bit(i));
    }
    for (std::size_t r = 0; r < pad_repeats; ++r) b.append(older, negate_pad);
    older = std::move(prev);
    prev = std::move(b).finish();
  }
  return prev;
}

BinaryVector embed3(const BinaryVector& x, std::size_t k, Budget budget, Side side) {
  const std::size_t d = x.dim();
  if (k < 1 || k > d) {
    throw std::invalid_argument("embedding 3 needs 1 <= k <= d, got k = " + std::to_string(k) +
                                ", d = " + std::to_string(d));
  }
  check_budget(embed3_dimension(d, k), budget);
  BinaryVector::Builder out;
  std::size_t pos = 0;
  for (const std::size_t len : embed3_chunks(d, k)) {
    // Tensor of the per-coordinate pairs (1-x, 1) or (y, 1-y) over the chunk.
    BinaryVector block = BinaryVector::filled(1, true);
    for (std::size_t j = pos; j < pos + len; ++j) {
      const bool one = x.bit(j);
      const BinaryVector pair = side == Side::kData ? BinaryVector::from_entries({one ? 0 : 1, 1})
                                                    : BinaryVector::from_entries({one ? 1 : 0, one ? 0 : 1});
      block = tensor(block, pair);
    }
    out.append(block);
    pos += len;
  }
  return std::move(out).finish();
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::uint64_t requested, std::uint64_t budget)
    : std::length_error("embedded dimension " +
                        (requested == kSaturated ? std::string(">= 2^64") : std::to_string(requested)) +
                        " exceeds the memory budget of " + std::to_string(budget) + " entries"),
      requested_(requested),
      budget_(budget) {}

SignVector embed1_data(const BinaryVector& x) { return embed1(x, Side::kData); }
SignVector embed1_query(const BinaryVector& y) { return embed1(y, Side::kQuery); }

std::uint64_t embed2_dimension(std::size_t d, unsigned q) {
  if (q == 0) return 1;
  const std::uint64_t base = 4 * static_cast<std::uint64_t>(d) + 2;
  const std::uint64_t pad = sat_mul(2 * static_cast<std::uint64_t>(d), 2 * static_cast<std::uint64_t>(d));
  std::uint64_t older = 1;
  std::uint64_t prev = base;
  for (unsigned level = 2; level <= q; ++level) {
    const std::uint64_t next = sat_add(sat_mul(2 * base, prev), sat_mul(pad, older));
    older = prev;
    prev = next;
  }
  return prev;
}

SignVector embed2_data(const BinaryVector& x, unsigned q, Budget budget) {
  return embed2(x, q, budget, Side::kData);
}
SignVector embed2_query(const BinaryVector& y, unsigned q, Budget budget) {
  return embed2(y, q, budget, Side::kQuery);
}

std::vector<std::size_t> embed3_chunks(std::size_t d, std::size_t k) {
  if (k < 1 || k > d) throw std::invalid_argument("embedding 3 needs 1 <= k <= d");
  std::vector<std::size_t> lens(k, d / k);
  for (std::size_t i = 0; i < d % k; ++i) ++lens[i];
  return lens;
}

std::uint64_t embed3_dimension(std::size_t d, std::size_t k) {
  std::uint64_t total = 0;
  for (const std::size_t len : embed3_chunks(d, k)) {
    total = sat_add(total, len >= 64 ? kSaturated : std::uint64_t{1} << len);
  }
  return total;
}

BinaryVector embed3_data(const BinaryVector& x, std::size_t k, Budget budget) {
  return embed3(x, k, budget, Side::kData);
}
BinaryVector embed3_query(const BinaryVector& y, std::size_t k, Budget budget) {
  return embed3(y, k, budget, Side::kQuery);
}

void validate_family(int family, std::uint64_t param, std::size_t d) {
  switch (family) {
    case 1:
      if (d < 4) throw std::invalid_argument("family 1 needs d >= 4");
      return;
    case 2:
      if (d < 2) throw std::invalid_argument("family 2 needs d >= 2");
      if (param < 1 || param > 64) throw std::invalid_argument("family 2 needs 1 <= q <= 64");
      return;
    case 3:
      if (param < 1 || param > d) throw std::invalid_argument("family 3 needs 1 <= k <= d");
      return;
    default:
      throw std::invalid_argument("unknown embedding family " + std::to_string(family));
  }
}

Embedded embed(int family, std::uint64_t param, const BinaryVector& x, Side side, Budget budget) {
  validate_family(family, param, x.dim());
  switch (family) {
    case 1:
      return embed1(x, side);
    case 2:
      return embed2(x, static_cast<unsigned>(param), budget, side);
    default:
      return embed3(x, static_cast<std::size_t>(param), budget, side);
  }
}

}  // namespace ipsjoin::embeddings
