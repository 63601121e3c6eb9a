#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "ipsjoin/core/join.hpp"
#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/lsh/collision.hpp"
#include "ipsjoin/lsh/hyperplane.hpp"
#include "ipsjoin/lsh/incoherent.hpp"
#include "ipsjoin/lsh/lift.hpp"
#include "ipsjoin/lsh/lsh_index.hpp"
#include "ipsjoin/lsh/rho.hpp"
#include "ipsjoin/lsh/symmetric_lift.hpp"

using namespace ipsjoin;
using namespace ipsjoin::lsh;

TEST_CASE("asymmetric lift examples") {
  CHECK(inner_product(lift_data(RealVector{1.0, 0.0}, 1.0), lift_query(RealVector{1.0, 0.0}, 1.0)) ==
        doctest::Approx(1.0));
  CHECK(std::abs(inner_product(lift_data(RealVector{0.6, 0.0}, 1.0), lift_query(RealVector{0.0, 0.8}, 1.0))) < 1e-15);
  CHECK(inner_product(lift_data(RealVector{0.5, 0.5}, 2.0), lift_query(RealVector{1.0, 0.0}, 2.0)) ==
        doctest::Approx(0.25));
  const auto p = lift_data(RealVector{0.3, 0.4}, 3.0);
  CHECK(p.dim() == 4);
  CHECK(p.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(lift_data(RealVector{1.0, 1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(lift_query(RealVector{3.0, 0.0}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(AsymmetricLift(0.5), std::invalid_argument);
}

TEST_CASE("rho_datadep examples") {
  const auto r = rho_datadep(0.5, 0.5);
  CHECK(std::abs(r.rho - 0.5) <= 1e-12);
  CHECK(r.r == doctest::Approx(1.0));
  CHECK(r.c_prime == doctest::Approx(std::sqrt(1.5)));
  CHECK(rho_datadep(0.3, 1.0).rho == doctest::Approx(1.0));
  CHECK(rho_datadep(0.999999, 0.5).rho < 1e-5);
  CHECK(rho_datadep(1.0, 0.5).rho == 0.0);
  CHECK_THROWS_AS(rho_datadep(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(rho_datadep(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("rho_simple examples") {
  CHECK(rho_simple(0.9, 0.9) > rho_datadep(0.9, 0.9).rho);
  CHECK(rho_simple(0.4, 1.0) == doctest::Approx(1.0));
  const double v = rho_simple(0.5, 0.5);
  CHECK(v > 0.0);
  CHECK(v < 1.0);
  CHECK_THROWS_AS(rho_simple(1.5, 0.5), std::invalid_argument);
}

TEST_CASE("hyperplane hashes are antisymmetric and deterministic") {
  const HyperplaneFamily h{16, Seed{7}};
  const RealVector x{0.6, 0.8};
  const RealVector minus{-0.6, -0.8};
  for (std::uint64_t f = 0; f < 50; ++f) {
    CHECK(hyperplane_hash(h, x, f) == hyperplane_hash(h, x, f));
    CHECK((hyperplane_hash(h, x, f) ^ hyperplane_hash(h, minus, f)) == 0xffffu);
  }
  CHECK_THROWS_AS(hyperplane_hash(h, RealVector{1.0, 1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS((HyperplaneFamily{0, Seed{}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((HyperplaneFamily{33, Seed{}}.validate()), std::invalid_argument);
}

TEST_CASE("estimate_collision examples") {
  const HyperplaneHashFamily family(HyperplaneFamily{1, Seed{3}});
  const RealVector x{1.0, 0.0};
  const auto same = estimate_collision(family, x, x, 1000, 1);
  CHECK(same.p_hat == 1.0);
  CHECK(same.stderr_ == 0.0);
  const auto anti = estimate_collision(family, x, RealVector{-1.0, 0.0}, 1000, 1);
  CHECK(anti.p_hat == 0.0);
  const auto ortho = estimate_collision(family, x, RealVector{0.0, 1.0}, 100000, 2);
  CHECK(std::abs(ortho.p_hat - 0.5) <= 3.0 * std::sqrt(0.25 / 100000));
  CHECK_THROWS_AS(estimate_collision(family, x, x, 0, 1), std::invalid_argument);
}

TEST_CASE("estimate_collision is independent of the thread count") {
  const AsymmetricLiftFamily family(2.0, HyperplaneFamily{3, Seed{5}});
  const RealVector p{0.3, 0.1};
  const RealVector q{1.0, -0.5};
  set_default_threads(1);
  const auto a = estimate_collision(family, p, q, 20000, 9);
  set_default_threads(8);
  const auto b = estimate_collision(family, p, q, 20000, 9);
  set_default_threads(1);
  CHECK(a.collisions == b.collisions);
}

TEST_CASE("incoherent family for N = 9, epsilon = 1/3") {
  const auto fam = build_incoherent(9, 1.0 / 3.0);
  CHECK(fam.q == 3);
  CHECK(fam.t == 2);
  CHECK(fam.dim == 9);
  for (std::uint64_t u = 0; u < 9; ++u) {
    const auto v = incoherent_vector(fam, u);
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(incoherent_overlap(fam, u, u) == 3);
    for (std::uint64_t w = u + 1; w < 9; ++w) {
      const auto o = incoherent_overlap(fam, u, w);
      CHECK((o == 0 || o == 1));
      CHECK(inner_product(v, incoherent_vector(fam, w)) == doctest::Approx(o / 3.0));
    }
  }
  CHECK_THROWS_AS(build_incoherent(9, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(incoherent_vector(fam, 9), std::out_of_range);
}

TEST_CASE("Reed-Solomon coherence is m/q with m <= t-1 for q <= 7, t <= min(3, q)") {
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t t = 1; t <= std::min(3u, q); ++t) {
      IncoherentFamily fam{q, t, static_cast<double>(t - 1) / q, std::size_t{q} * q};
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < t; ++i) count *= q;
      std::set<std::vector<std::size_t>> supports;
      for (std::uint64_t u = 0; u < count; ++u) {
        supports.insert(incoherent_support(fam, u));
        for (std::uint64_t w = u + 1; w < count; ++w) CHECK(incoherent_overlap(fam, u, w) <= t - 1);
      }
      CHECK(supports.size() == count);
    }
  }
}

TEST_CASE("incoherent search respects the coherence bound and prime sizes") {
  for (std::uint64_t n : {2ull, 100ull, 5000ull, 1ull << 20}) {
    for (double eps : {0.5, 0.1, 0.02}) {
      const auto fam = build_incoherent(n, eps);
      CHECK(is_prime(fam.q));
      CHECK(fam.epsilon <= eps);
      CHECK(BigUnsigned(n) <= fam.capacity());
    }
  }
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(65535));
}

TEST_CASE("fixed-point codec") {
  const FixedPointCodec codec{3, 2};
  CHECK(codec.representable(0.75));
  CHECK(codec.representable(-1.0));
  CHECK_FALSE(codec.representable(1.0));
  CHECK_FALSE(codec.representable(0.3));
  CHECK(codec.quantize(RealVector{0.3, -2.0}) == RealVector{0.25, -1.0});
  CHECK(codec.index(RealVector{0.0, 0.0}) == BigUnsigned(0));
  // -1 is code 100, 0.25 is code 001: index 100001.
  CHECK(codec.index(RealVector{-1.0, 0.25}) == BigUnsigned(0b100001));
  CHECK_THROWS_AS(codec.index(RealVector{0.3, 0.0}), std::invalid_argument);
}

TEST_CASE("symmetric lift examples") {
  const FixedPointCodec codec{3, 1};
  const auto fam = build_incoherent_for(codec, 1.0 / 3.0);
  const RealVector p{0.5};
  const RealVector q{-0.25};
  const auto fp = symmetric_lift(p, codec, fam);
  const auto fq = symmetric_lift(q, codec, fam);
  CHECK(fp.dim() == 1 + fam.dim);
  CHECK(fp.norm() == doctest::Approx(1.0));
  CHECK(std::abs(inner_product(fp, fq) - inner_product(p, q)) <= fam.epsilon + 1e-12);
  CHECK(inner_product(fp, fp) == doctest::Approx(1.0));
  const auto unit = symmetric_lift(RealVector{-1.0}, codec, fam);
  CHECK(unit[0] == -1.0);
  for (std::size_t i = 1; i < unit.dim(); ++i) CHECK(unit[i] == 0.0);
  CHECK_THROWS_AS(symmetric_lift(RealVector{0.3}, codec, fam), std::invalid_argument);
}

TEST_CASE("symmetric lift error bound on random distinct pairs") {
  const FixedPointCodec codec{4, 2};
  const auto fam = build_incoherent_for(codec, 0.25);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  int checked = 0;
  while (checked < 2000) {
    const auto p = codec.quantize(RealVector{u(rng), u(rng)});
    const auto q = codec.quantize(RealVector{u(rng), u(rng)});
    if (p == q) continue;
    const double err = std::abs(inner_product(symmetric_lift(p, codec, fam), symmetric_lift(q, codec, fam)) -
                                inner_product(p, q));
    CHECK(err <= fam.epsilon + 1e-12);
    ++checked;
  }
}

TEST_CASE("LshJoiner finds close pairs and never reports pairs below cs") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  std::vector<RealVector> P, Q;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> v(16);
    double n2 = 0.0;
    for (double& e : v) {
      e = g(rng);
      n2 += e * e;
    }
    for (double& e : v) e /= std::sqrt(n2);
    P.emplace_back(v);
  }
  for (int j = 0; j < 20; ++j) Q.push_back(P[j * 7]);
  const auto data = make_dataset(P, 16);
  const auto queries = make_dataset(Q, 16);
  const JoinSpec spec(0.9, 0.5, JoinMode::kSigned);
  const LshJoiner lsh(LshParams{8, 16, Seed{4}});
  const auto pairs = lsh.join(data, queries, spec);
  CHECK(pairs.size() == 20);
  for (const auto& p : pairs) CHECK(p.value >= spec.cs());
  std::vector<double> neg(P[3].values().begin(), P[3].values().end());
  for (double& e : neg) e = -e;
  const auto negated = make_dataset(std::vector<RealVector>{RealVector(neg)}, 16);
  for (const auto& p : lsh.join(data, negated, spec)) {
    CHECK(p.data != 3);
    CHECK(p.value >= spec.cs());
  }
  const auto unsigned_pairs = lsh.join(data, negated, JoinSpec(0.9, 0.5, JoinMode::kUnsigned));
  REQUIRE(unsigned_pairs.size() == 1);
  CHECK(std::abs(unsigned_pairs[0].value) >= spec.cs());
}
