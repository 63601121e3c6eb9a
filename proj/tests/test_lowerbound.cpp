#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ipsjoin/lowerbound/audit.hpp"
#include "ipsjoin/lowerbound/sequences.hpp"
#include "ipsjoin/lowerbound/verify.hpp"
#include "ipsjoin/lsh/collision.hpp"

using namespace ipsjoin;
using namespace ipsjoin::lowerbound;

TEST_CASE("case 1a example") {
  const auto seq = seq_case1_1d(0.25, 0.5, 1.0);
  REQUIRE(seq.size() == 3);
  CHECK(seq.Q[0][0] == 1.0);
  CHECK(seq.Q[1][0] == 0.5);
  CHECK(seq.P[0][0] == 0.25);
  CHECK(seq.P[1][0] == 0.5);
  CHECK(inner_product(seq.Q[0], seq.P[0]) == 0.25);
  CHECK(inner_product(seq.Q[0], seq.P[1]) == 0.5);
  CHECK(inner_product(seq.Q[1], seq.P[0]) == 0.125);
  CHECK(inner_product(seq.Q[1], seq.P[1]) == 0.25);
  const auto r = verify_sequence(seq);
  CHECK(r.pass);
  CHECK(r.upper_margin == 0.0);
  CHECK(r.lower_margin == 0.0);
  CHECK(seq_case1_1d(0.5, 0.5, 1.0).size() == 2);
  CHECK_THROWS_AS(seq_case1_1d(0.6, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("case 1a products follow c^(i-j) s") {
  const auto seq = seq_case1_1d(0.001, 0.7, 3.0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = 0; j < seq.size(); ++j) {
      const double expected = std::pow(0.7, static_cast<double>(i) - static_cast<double>(j)) * 0.001;
      CHECK(std::abs(inner_product(seq.Q[i], seq.P[j]) - expected) <= 4 * std::numeric_limits<double>::epsilon() * expected);
    }
  }
}

TEST_CASE("case 1a length is nondecreasing in U/s") {
  std::size_t last = 0;
  for (double ratio = 2.0; ratio < 1e6; ratio *= 1.3) {
    const std::size_t n = case1_length(1.0 / ratio, 0.5, 1.0);
    CHECK(n >= last);
    last = n;
  }
}

TEST_CASE("case 1b") {
  const auto d2 = seq_case1_blocked(0.01, 0.5, 1.0, 2);
  CHECK(verify_sequence(d2).pass);
  const auto d6 = seq_case1_blocked(0.01, 0.5, 1.0, 6);
  const auto r = verify_sequence(d6);
  CHECK(r.pass);
  CHECK(r.max_query_norm <= 1.0);
  CHECK(r.max_data_norm <= 1.0);
  CHECK(d6.block_lengths.size() == 3);
  for (std::size_t len : d6.block_lengths) CHECK(len >= 4);
  CHECK_THROWS_AS(seq_case1_blocked(0.01, 0.5, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(seq_case1_blocked(0.3, 0.5, 1.0, 4), std::invalid_argument);
}

TEST_CASE("case 2 identity and block length") {
  const auto seq = seq_case2(0.01, 0.5, 1.0, 2);
  CHECK(seq.block_lengths[0] >= 7);
  CHECK(case2_min_block(0.01, 0.5, 1.0) == 7);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = 0; j < seq.size(); ++j) {
      const double expected = 0.01 * 0.5 * (static_cast<double>(j) - static_cast<double>(i)) + 0.01;
      CHECK(std::abs(inner_product(seq.Q[i], seq.P[j]) - expected) <= 1e-12);
    }
  }
  CHECK(inner_product(seq.Q[3], seq.P[3]) == doctest::Approx(0.01));
  CHECK(inner_product(seq.Q[3], seq.P[2]) == doctest::Approx(0.005));
  CHECK(verify_sequence(seq, JoinMode::kSigned).pass);
  const auto u = verify_sequence(seq, JoinMode::kUnsigned);
  CHECK_FALSE(u.pass);
  CHECK(u.offending.has_value());
  CHECK(verify_sequence(seq_case2(0.01, 0.5, 1.0, 4), JoinMode::kSigned).pass);
  CHECK_THROWS_AS(seq_case2(0.3, 0.5, 1.0, 2), std::invalid_argument);
}

TEST_CASE("case 3") {
  const auto seq = seq_case3(1.0 / 128, 1.0, 0.5);
  CHECK(seq.size() == 15);
  CHECK(seq.epsilon == 0.5 / 32);
  REQUIRE(seq.family);
  CHECK(seq.family->epsilon <= seq.epsilon);
  const auto r = verify_sequence(seq);
  CHECK(r.pass);
  CHECK(r.max_query_norm <= 1.0);
  CHECK(r.max_data_norm <= 1.0);
  CHECK_THROWS_AS(seq_case3(0.2, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("verifier catches a corrupted entry") {
  auto seq = seq_case1_1d(0.01, 0.5, 1.0);
  seq.P[2] = RealVector{0.0};
  const auto r = verify_sequence(seq);
  CHECK_FALSE(r.pass);
  REQUIRE(r.offending);
  CHECK(r.offending->first == 0);
  CHECK(r.offending->second == 2);
  auto big = seq_case1_1d(0.01, 0.5, 1.0);
  big.P[0] = RealVector{1.5};
  CHECK_FALSE(verify_sequence(big).pass);
}

TEST_CASE("gap bound") {
  CHECK(gap_bound(256) == 0.015625);
  CHECK(gap_bound(2) == 0.125);
  CHECK_THROWS_AS(gap_bound(1), std::invalid_argument);
}

TEST_CASE("gap audit on a short lifted sequence") {
  const auto seq = seq_case1_1d(0.01, 0.5, 1.0);
  const lsh::AsymmetricLiftFamily family(1.0, lsh::HyperplaneFamily{1, Seed{3}});
  const auto a = gap_audit(seq, family, 20000, 4);
  CHECK(a.n == seq.size());
  CHECK(a.trials == 20000);
  CHECK(a.p1_min_hat >= 0.0);
  CHECK(a.p1_min_hat <= 1.0);
  CHECK(a.pass());
  const auto b = gap_audit(seq, family, 20000, 4);
  CHECK(a.p1_min_hat == b.p1_min_hat);
  CHECK(a.p2_max_hat == b.p2_max_hat);
}
