#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ipsjoin/core/vectors.hpp"

namespace ipsjoin::embeddings {

/// Upper limit on entries per embedded vector. Embeddings 2 and 3 grow
/// exponentially; building a vector above the limit fails up front.
struct Budget {
  std::uint64_t max_entries = std::uint64_t{1} << 30;
};

class BudgetExceeded : public std::length_error {
 public:
  BudgetExceeded(std::uint64_t requested, std::uint64_t budget);
  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t requested_;
  std::uint64_t budget_;
};

// --- Embedding 1: signed, {0,1}^d -> {-1,1}^{4d-4}, product 4 - 4 x.y --------

/// Requires d >= 4.
SignVector embed1_data(const BinaryVector& x);
SignVector embed1_query(const BinaryVector& y);

// --- Embedding 2: unsigned Chebyshev embedding into {-1,1} ------------------
//
// Base level (dimension 4d+2): the per-coordinate table of embedding 1 followed
// by d+2 ones on both sides, so the base product is u = 2d + 2 - 4 x.y. Level q:
//   f_q = (x ⊠ f_{q-1})^2 ⊞ f_{q-2}^{(2d)^2}
//   g_q = (y ⊠ g_{q-1})^2 ⊞ (-g_{q-2})^{(2d)^2}
// giving f_q . g_q = (2d)^q T_q(u / 2d).

/// D_0 = 1, D_1 = 4d+2, D_q = 2(4d+2) D_{q-1} + (2d)^2 D_{q-2}; saturates at UINT64_MAX.
std::uint64_t embed2_dimension(std::size_t d, unsigned q);

/// Requires d >= 2 and q >= 1. Throws BudgetExceeded when D_q > budget.
SignVector embed2_data(const BinaryVector& x, unsigned q, Budget budget = {});
SignVector embed2_query(const BinaryVector& y, unsigned q, Budget budget = {});

// --- Embedding 3: unsigned, {0,1}^d -> {0,1}, sum over k chunks -------------

/// Chunk lengths for k chunks over d coordinates: d mod k chunks of length
/// ceil(d/k) followed by chunks of length floor(d/k), all non-empty.
std::vector<std::size_t> embed3_chunks(std::size_t d, std::size_t k);
/// Sum over chunks of 2^{length}; saturates at UINT64_MAX.
std::uint64_t embed3_dimension(std::size_t d, std::size_t k);

/// Requires 1 <= k <= d. Throws BudgetExceeded when the output is too large.
BinaryVector embed3_data(const BinaryVector& x, std::size_t k, Budget budget = {});
BinaryVector embed3_query(const BinaryVector& y, std::size_t k, Budget budget = {});

// --- Family dispatch ---------------------------------------------------------

using Embedded = std::variant<SignVector, BinaryVector>;

enum class Side { kData, kQuery };

/// Applies family 1, 2 or 3 (param = q for family 2, k for family 3, ignored for 1).
Embedded embed(int family, std::uint64_t param, const BinaryVector& x, Side side, Budget budget = {});

/// Throws std::invalid_argument for an unknown family or invalid parameters at dimension d.
void validate_family(int family, std::uint64_t param, std::size_t d);

}  // namespace ipsjoin::embeddings
