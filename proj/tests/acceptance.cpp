// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "ipsjoin/core/chebyshev.hpp"
#include "ipsjoin/core/join.hpp"
#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/core/random.hpp"
#include "ipsjoin/core/vectors.hpp"
#include "ipsjoin/embeddings/embeddings.hpp"
#include "ipsjoin/embeddings/profile.hpp"
#include "ipsjoin/lowerbound/audit.hpp"
#include "ipsjoin/lowerbound/sequences.hpp"
#include "ipsjoin/lowerbound/verify.hpp"
#include "ipsjoin/lsh/collision.hpp"
#include "ipsjoin/lsh/incoherent.hpp"
#include "ipsjoin/lsh/lift.hpp"
#include "ipsjoin/lsh/rho.hpp"
#include "ipsjoin/lsh/symmetric_lift.hpp"
#include "ipsjoin/ovp/ovp.hpp"
#include "ipsjoin/sketch/mips_index.hpp"
#include "ipsjoin/sketch/threshold_search.hpp"

using namespace ipsjoin;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    else detail += "; ";
    pass = false;
    detail += why;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

BinaryVector from_mask(std::uint32_t mask, std::size_t d) {
  std::vector<int> e(d);
  for (std::size_t i = 0; i < d; ++i) e[i] = static_cast<int>((mask >> i) & 1u);
  return BinaryVector::from_entries(std::span<const int>(e));
}

RealVector random_in_ball(std::mt19937_64& rng, std::size_t d, double radius) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(d);
  double n2 = 0.0;
  for (double& e : v) {
    e = g(rng);
    n2 += e * e;
  }
  const double r = radius * std::pow(u(rng), 1.0 / static_cast<double>(d)) / std::sqrt(n2);
  for (double& e : v) e *= r;
  return RealVector(std::move(v));
}

RealVector random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  std::vector<double> v(d);
  double n2 = 0.0;
  for (double& e : v) {
    e = g(rng);
    n2 += e * e;
  }
  for (double& e : v) e /= std::sqrt(n2);
  return RealVector(std::move(v));
}

/// Counts pairs (x, y) over all of {0,1}^d where `check(x.y, product)` fails.
template <typename V, typename Check>
std::uint64_t exhaustive_mismatches(std::size_t d, const std::function<V(const BinaryVector&)>& f,
                                    const std::function<V(const BinaryVector&)>& g, Check check) {
  const std::uint32_t count = 1u << d;
  std::vector<V> F(count), G(count);
  parallel_for(count, [&](std::size_t m) {
    const auto x = from_mask(static_cast<std::uint32_t>(m), d);
    F[m] = f(x);
    G[m] = g(x);
  });
  std::vector<std::uint64_t> bad(count, 0);
  parallel_for(count, [&](std::size_t a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      const int xy = std::popcount(static_cast<std::uint32_t>(a) & b);
      if (!check(xy, inner_product(F[a], G[b]))) ++bad[a];
    }
  });
  std::uint64_t total = 0;
  for (auto v : bad) total += v;
  return total;
}

// ---------------------------------------------------------------- 1

Outcome criterion1() {
  using namespace embeddings;
  Outcome o;
  const auto t0 = Clock::now();
  std::uint64_t pairs = 0;
  for (std::size_t d = 4; d <= 10; ++d) {
    pairs += std::uint64_t{1} << (2 * d);
    const auto bad1 = exhaustive_mismatches<SignVector>(
        d, embed1_data, embed1_query, [](int xy, std::int64_t p) { return p == 4 - 4 * xy; });
    if (bad1) o.fail("embed1 d=" + std::to_string(d) + ": " + std::to_string(bad1) + " mismatches");

    for (std::size_t k : {std::size_t{1}, std::size_t{2}, d}) {
      const auto bad3 = exhaustive_mismatches<BinaryVector>(
          d, [k](const BinaryVector& x) { return embed3_data(x, k); },
          [k](const BinaryVector& y) { return embed3_query(y, k); },
          [k](int xy, std::int64_t p) {
            const auto kk = static_cast<std::int64_t>(k);
            return xy == 0 ? p == kk : (p >= 0 && p <= kk - 1);
          });
      if (bad3) o.fail("embed3 d=" + std::to_string(d) + " k=" + std::to_string(k) + ": " + std::to_string(bad3));
    }

    for (unsigned q = 1; q <= 3; ++q) {
      const auto b = static_cast<std::int64_t>(2 * d);
      const auto bad2 = exhaustive_mismatches<SignVector>(
          d, [q](const BinaryVector& x) { return embed2_data(x, q); },
          [q](const BinaryVector& y) { return embed2_query(y, q); },
          [q, b](int xy, std::int64_t p) { return p == scaled_chebyshev(q, b + 2 - 4 * xy, b); });
      if (bad2) o.fail("embed2 d=" + std::to_string(d) + " q=" + std::to_string(q) + ": " + std::to_string(bad2));
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 120.0) o.fail("runtime " + fmt(secs) + " s >= 120 s");
  if (o.pass) o.detail = std::to_string(pairs) + " pairs per family setting, d = 4..10, " + fmt(secs) + " s";
  return o;
}

// ---------------------------------------------------------------- 2

Outcome criterion2() {
  using namespace embeddings;
  Outcome o;
  for (std::size_t d = 4; d <= 64; ++d) {
    const auto p = profile(1, d);
    if (p.d1 != d || p.d2 != 4 * d - 4 || p.cs != 0.0 || p.s != 4.0) o.fail("profile(1," + std::to_string(d) + ")");
    for (std::size_t k = 1; k <= d; ++k) {
      if (d % k != 0 || d / k > 40) continue;
      const auto p3 = profile(3, d, k);
      const auto kd = static_cast<double>(k);
      if (p3.d1 != d || p3.d2 != (std::uint64_t{k} << (d / k)) || p3.cs != kd - 1 || p3.s != kd)
        o.fail("profile(3," + std::to_string(d) + "," + std::to_string(k) + ")");
      if (k >= 2 && std::abs(p3.ratio() - family3_ratio_closed_form(d, k)) > 1e-9)
        o.fail("family 3 ratio at d=" + std::to_string(d) + " k=" + std::to_string(k));
    }
  }
  int full_bound_misses = 0;
  int half_bound_misses = 0;
  int cases = 0;
  for (std::size_t d = 4; d <= 10; ++d) {
    for (unsigned q = 1; q <= 3; ++q) {
      ++cases;
      const auto p = profile(2, d, q);
      const double base = std::pow(2.0 * static_cast<double>(d), q);
      const double target = base * std::exp(q / std::sqrt(static_cast<double>(d)));
      if (p.cs != base) o.fail("embed2 cs at d=" + std::to_string(d) + " q=" + std::to_string(q));
      if (!(p.s >= target)) ++full_bound_misses;
      if (!(p.s >= target / 2)) ++half_bound_misses;
    }
  }
  if (full_bound_misses)
    o.fail("s >= (2d)^q e^{q/sqrt d} fails on " + std::to_string(full_bound_misses) + "/" + std::to_string(cases) +
           " exhaustive cases (s >= half of it fails on " + std::to_string(half_bound_misses) + ")");
  for (unsigned q = 2; q <= 8; ++q) {
    const std::size_t d = std::size_t{q} * q;
    const auto p = profile(2, d, q);
    if (!p.nominal || std::abs(p.nominal->ratio() - family2_ratio_closed_form(d, q)) > 1e-9)
      o.fail("family 2 ratio at d=" + std::to_string(d));
  }
  if (o.pass) o.detail = "profiles, embed2 bounds and ratio formulas";
  return o;
}

// ---------------------------------------------------------------- 3

Outcome criterion3() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(3);
  const BruteForceJoiner joiner;
  int agree = 0;
  int found = 0;
  constexpr int kInstances = 500;
  for (int t = 0; t < kInstances; ++t) {
    const int family = 1 + t % 3;
    const std::size_t d = 4 + rng() % 13;
    const std::size_t n = 1 + rng() % 200;
    std::uint64_t param = 0;
    if (family == 2) param = 1 + rng() % (d <= 10 ? 3 : 2);
    if (family == 3) param = 1 + rng() % d;
    // Expected orthogonal pairs n^2 (1 - rho^2)^d near `spread`, so both outcomes occur.
    const double spread = std::exp(std::uniform_real_distribution<double>(-1.5, 1.5)(rng));
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    const double density =
        std::clamp(std::sqrt(1.0 - std::pow(nn / spread, -1.0 / static_cast<double>(d))), 0.05, 0.98);
    const auto inst = ovp::random_instance(n, n, d, density, derive_seed(3, t), t % 2 == 0);
    const auto r = ovp::reduce_and_join(inst, family, param, joiner);
    const bool oracle = ovp::ovp_bruteforce(inst).has_value();
    if (r.agree() && r.oracle_found == oracle) ++agree;
    if (oracle) ++found;
  }
  const double secs = seconds_since(t0);
  if (agree != kInstances) o.fail(std::to_string(kInstances - agree) + " disagreements");
  if (secs >= 300.0) o.fail("runtime " + fmt(secs) + " s >= 300 s");
  if (o.pass)
    o.detail = std::to_string(agree) + "/" + std::to_string(kInstances) + " agree (" + std::to_string(found) +
               " with an orthogonal pair), " + fmt(secs) + " s";
  return o;
}

// ---------------------------------------------------------------- 4

Outcome criterion4() {
  Outcome o;
  const double r = lsh::rho_datadep(0.5, 0.5).rho;
  if (std::abs(r - 0.5) > 1e-12) o.fail("rho_datadep(0.5, 0.5) = " + fmt(r));
  int dominated = 0;
  for (int i = 1; i <= 50; ++i)
    for (int j = 1; j <= 50; ++j)
      if (lsh::rho_datadep(i / 51.0, j / 51.0).rho < lsh::rho_simple(i / 51.0, j / 51.0)) ++dominated;
  if (dominated != 2500) o.fail("rho_datadep < rho_simple on " + std::to_string(dominated) + "/2500 points");
  int decreasing_c = 0;
  int decreasing_cprime = 0;
  int steps = 0;
  for (int i = 1; i <= 50; ++i) {
    for (int j = 1; j < 50; ++j) {
      ++steps;
      const auto a = lsh::rho_datadep(i / 51.0, j / 51.0);
      const auto b = lsh::rho_datadep(i / 51.0, (j + 1) / 51.0);
      if (b.rho < a.rho) ++decreasing_c;
      // Larger c means smaller c', so rho decreasing in c' means it increases with c.
      if (b.c_prime < a.c_prime && b.rho > a.rho) ++decreasing_cprime;
    }
  }
  if (decreasing_c != steps)
    o.fail("rho_datadep decreases in c on " + std::to_string(decreasing_c) + "/" + std::to_string(steps) +
           " grid steps (it decreases in the ANN factor c' on " + std::to_string(decreasing_cprime) + ")");
  if (o.pass) o.detail = "value, dominance and monotonicity on a 50x50 grid";
  return o;
}

// ---------------------------------------------------------------- 5

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  double worst_p = 0.0;
  double worst_n = 0.0;
  for (double U : {1.0, 2.0, 10.0}) {
    for (int t = 0; t < 10000; ++t) {
      const std::size_t d = 1 + rng() % 16;
      const auto p = random_in_ball(rng, d, 1.0);
      const auto q = random_in_ball(rng, d, U);
      const auto lp = lsh::lift_data(p, U);
      const auto lq = lsh::lift_query(q, U);
      worst_p = std::max(worst_p, std::abs(inner_product(lp, lq) - inner_product(p, q) / U));
      worst_n = std::max({worst_n, std::abs(lp.norm() - 1.0), std::abs(lq.norm() - 1.0)});
    }
  }
  if (worst_p > 1e-9) o.fail("product error " + fmt(worst_p));
  if (worst_n > 1e-9) o.fail("norm error " + fmt(worst_n));
  if (o.pass) o.detail = "max product error " + fmt(worst_p) + ", max norm error " + fmt(worst_n);
  return o;
}

// ---------------------------------------------------------------- 6

Outcome criterion6() {
  Outcome o;
  const lsh::IncoherentFamily fam{3, 2, 1.0 / 3.0, 9};
  for (std::uint64_t u = 0; u < 9; ++u) {
    for (std::uint64_t w = u + 1; w < 9; ++w) {
      const double ip = inner_product(lsh::incoherent_vector(fam, u), lsh::incoherent_vector(fam, w));
      if (std::abs(ip) > 1e-12 && std::abs(ip - 1.0 / 3.0) > 1e-12)
        o.fail("coherence " + fmt(ip) + " at (" + std::to_string(u) + "," + std::to_string(w) + ")");
    }
  }
  const lsh::FixedPointCodec codec{3, 1};
  const auto built = lsh::build_incoherent_for(codec, 1.0 / 3.0);
  if (built.q != 3 || built.t != 2) o.fail("codec family is not (q=3, t=2)");
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> code(-4, 3);
  int violations = 0;
  double worst = 0.0;
  for (int t = 0; t < 10000;) {
    const RealVector p{code(rng) / 4.0};
    const RealVector q{code(rng) / 4.0};
    if (p == q) continue;
    ++t;
    const double err =
        std::abs(inner_product(lsh::symmetric_lift(p, codec, fam), lsh::symmetric_lift(q, codec, fam)) -
                 inner_product(p, q));
    worst = std::max(worst, err);
    if (err > 1.0 / 3.0 + 1e-12) ++violations;
  }
  if (violations) o.fail(std::to_string(violations) + " violations of (t-1)/q");
  if (o.pass) o.detail = "coherence in {0, 1/3}; 10000 pairs, max error " + fmt(worst);
  return o;
}

// ---------------------------------------------------------------- 7

Outcome criterion7() {
  Outcome o;
  const lsh::HyperplaneHashFamily family(lsh::HyperplaneFamily{1, Seed{7}});
  constexpr std::uint64_t kTrials = 100000;
  std::string summary;
  int k = 0;
  for (double theta : {std::numbers::pi / 6, std::numbers::pi / 3, std::numbers::pi / 2, 2 * std::numbers::pi / 3}) {
    const RealVector x{1.0, 0.0};
    const RealVector y{std::cos(theta), std::sin(theta)};
    const auto e = lsh::estimate_collision(family, x, y, kTrials, derive_seed(7, ++k));
    const double expected = 1.0 - theta / std::numbers::pi;
    const double sigma = std::sqrt(expected * (1 - expected) / kTrials);
    const double z = (e.p_hat - expected) / sigma;
    if (std::abs(z) > 3.0) o.fail("theta=" + fmt(theta) + " z=" + fmt(z));
    summary += (summary.empty() ? "z = " : ", ") + fmt(z);
  }
  if (o.pass) o.detail = summary;
  return o;
}

// ---------------------------------------------------------------- 8

Outcome criterion8() {
  using namespace lowerbound;
  Outcome o;
  int grid = 0;
  for (double U : {1.0, 4.0}) {
    for (double s : {0.01, 0.05, 0.1, 0.25}) {
      for (double c : {0.25, 0.5, 0.75, 0.9}) {
        if (s > c * U) continue;
        ++grid;
        if (!verify_sequence(seq_case1_1d(s, c, U)).pass)
          o.fail("1a s=" + fmt(s) + " c=" + fmt(c) + " U=" + fmt(U));
      }
    }
  }
  if (grid < 20) o.fail("case 1a grid has " + std::to_string(grid) + " points");
  for (std::size_t d : {2, 4, 6}) {
    if (!verify_sequence(seq_case1_blocked(0.05, 0.5, 1.0, d)).pass) o.fail("1b d=" + std::to_string(d));
  }
  bool unsigned_failure = false;
  for (std::size_t d : {2, 4}) {
    for (double c : {0.25, 0.5}) {
      const double s = 0.01;
      const auto seq = seq_case2(s, c, 1.0, d);
      if (!verify_sequence(seq, JoinMode::kSigned).pass) o.fail("2 d=" + std::to_string(d) + " c=" + fmt(c));
      if (!verify_sequence(seq, JoinMode::kUnsigned).pass) unsigned_failure = true;
      const std::size_t guaranteed = case2_min_block(s, c, 1.0);
      for (std::size_t len : seq.block_lengths)
        if (len < guaranteed) o.fail("2 block " + std::to_string(len) + " < " + std::to_string(guaranteed));
    }
  }
  if (!unsigned_failure) o.fail("case 2 never fails in unsigned mode");
  for (double ratio : {64.0, 128.0, 288.0}) {
    for (double c : {0.25, 0.5}) {
      const auto seq = seq_case3(1.0 / ratio, 1.0, c);
      if (!verify_sequence(seq).pass) o.fail("3 U/s=" + fmt(ratio) + " c=" + fmt(c));
    }
  }
  if (o.pass) o.detail = "1a on " + std::to_string(grid) + " points, 1b, 2 (signed; unsigned fails), 3";
  return o;
}

// ---------------------------------------------------------------- 9

Outcome criterion9() {
  using namespace lowerbound;
  Outcome o;
  const auto t0 = Clock::now();
  std::string summary;
  for (std::size_t n : {64, 256}) {
    const double s = 0.01;
    const double c = std::pow(s, 1.0 / (static_cast<double>(n) - 0.5));
    const auto seq = seq_case1_1d(s, c, 1.0);
    if (seq.size() != n) {
      o.fail("sequence length " + std::to_string(seq.size()) + " != " + std::to_string(n));
      continue;
    }
    const lsh::AsymmetricLiftFamily family(1.0, lsh::HyperplaneFamily{1, Seed{derive_seed(9, n)}});
    const auto a = gap_audit(seq, family, 100000, derive_seed(90, n));
    if (!a.pass())
      o.fail("n=" + std::to_string(n) + " gap " + fmt(a.gap()) + " > " + fmt(a.bound) + " + 3 * " +
             fmt(a.combined_stderr()));
    summary += (summary.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + " gap " + fmt(a.gap()) +
               " bound " + fmt(a.bound);
  }
  const double secs = seconds_since(t0);
  if (secs >= 600.0) o.fail("runtime " + fmt(secs) + " s >= 600 s");
  if (o.pass) o.detail = summary + ", " + fmt(secs) + " s";
  return o;
}

// ---------------------------------------------------------------- 10

Outcome criterion10() {
  Outcome o;
  constexpr double kKappa = 4.0;

  int planted_hits = 0;
  for (int t = 0; t < 200; ++t) {
    std::mt19937_64 rng(derive_seed(10, t));
    const std::size_t n = 64;
    const std::size_t d = 32;
    const auto q = random_unit(rng, d);
    const std::size_t star = rng() % n;
    std::uniform_real_distribution<double> small(-0.125, 0.125);
    std::vector<RealVector> data(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == star) {
        data[i] = q;
        continue;
      }
      auto u = random_unit(rng, d);
      const double along = inner_product(u, q);
      std::vector<double> v(u.data());
      double n2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        v[k] -= along * q[k];
        n2 += v[k] * v[k];
      }
      const double tq = small(rng);
      const double f = std::sqrt(1 - tq * tq) / std::sqrt(n2);
      for (std::size_t k = 0; k < d; ++k) v[k] = f * v[k] + tq * q[k];
      data[i] = RealVector(std::move(v));
    }
    sketch::SketchParams params;
    params.kappa = kKappa;
    params.seed = Seed{derive_seed(100, t)};
    const auto index = sketch::MipsIndex::build(data, params);
    if (index.recover(q.values()) == star) ++planted_hits;
  }
  if (planted_hits < 180) o.fail("planted recovery " + std::to_string(planted_hits) + "/200");

  int good = 0;
  int total = 0;
  for (int t = 0; t < 50; ++t) {
    std::mt19937_64 rng(derive_seed(11, t));
    const std::size_t n = 256;
    const std::size_t d = 32;
    std::vector<RealVector> data(n);
    for (auto& p : data) p = random_in_ball(rng, d, 1.0);
    sketch::SketchParams params;
    params.kappa = kKappa;
    params.seed = Seed{derive_seed(110, t)};
    const auto index = sketch::MipsIndex::build(data, params);
    for (int j = 0; j < 20; ++j) {
      const auto q = random_unit(rng, d);
      double best = 0.0;
      for (const auto& p : data) best = std::max(best, std::abs(inner_product(p, q)));
      const double got = std::abs(inner_product(data[index.recover(q.values())], q));
      ++total;
      if (got >= std::pow(static_cast<double>(n), -1.0 / kKappa) * best) ++good;
    }
  }
  if (good < 0.95 * total) o.fail("end-to-end " + std::to_string(good) + "/" + std::to_string(total));

  int cmips_ok = 0;
  const double c = 0.5;
  const double gamma = 0x1p-40;
  const auto limit = static_cast<std::size_t>(std::ceil(std::log(1.0 / gamma) / std::log(1.0 / c))) + 1;
  for (int t = 0; t < 100; ++t) {
    std::mt19937_64 rng(derive_seed(12, t));
    std::vector<RealVector> data(50);
    for (auto& p : data) p = random_unit(rng, 16);
    const auto q = random_unit(rng, 16);
    const auto search = sketch::exact_threshold_search(data, 1.0, c);
    const auto r = sketch::cmips_from_threshold_search(search, q.values(), 1.0, c, gamma);
    double best = 0.0;
    for (const auto& p : data) best = std::max(best, std::abs(inner_product(p, q)));
    if (r.index && r.queries <= limit && std::abs(inner_product(data[*r.index], q)) >= c * best) ++cmips_ok;
  }
  if (cmips_ok != 100) o.fail("cmips " + std::to_string(cmips_ok) + "/100");

  if (o.pass)
    o.detail = "planted " + std::to_string(planted_hits) + "/200, end-to-end " + std::to_string(good) + "/" +
               std::to_string(total) + ", cmips 100/100";
  return o;
}

// ---------------------------------------------------------------- 11

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome criterion11() {
  using testing::run_cli;
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "ipsjoin_acceptance";
  fs::create_directories(dir);
  const auto path = [&](const std::string& name) { return (dir / name).string(); };

  // Fixed inputs shared by every run.
  run_cli("--seed 21 gen --n 40 --d 10 --density 0.4 --out " + path("bin.txt"));
  run_cli("--seed 22 gen --n 200 --d 8 --domain real --planted inner --out " + path("real.txt"));
  run_cli("--seed 23 gen --n 10 --d 8 --domain real --out " + path("realq.txt"));
  run_cli("--seed 24 sketch-mips build --in " + path("real.txt") + " --out " + path("fixed.idx"));

  struct Case {
    std::string name;
    std::string args;
    std::string file;  // output file to compare, if any
  };
  const std::vector<Case> cases = {
      {"gen", "gen --n 50 --d 12 --domain real --planted orthogonal --out " + path("gen.out"), path("gen.out")},
      {"embed", "embed --family 2 --param 2 --in " + path("bin.txt"), ""},
      {"profile", "profile --family 2 --d 9 --param 3", ""},
      {"ovp-reduce", "ovp-reduce --family 3 --param 2 --n 150 --d 12 --planted --joiner lsh", ""},
      {"join", "join --data " + path("real.txt") + " --queries " + path("realq.txt") +
                   " --s 0.2 --c 0.5 --mode unsigned --joiner sketch",
       ""},
      {"rho-curve", "rho-curve --U 2", ""},
      {"lsh-bench", "lsh-bench --suite lift --trials 20000", ""},
      {"sketch-mips build", "sketch-mips build --in " + path("real.txt") + " --out " + path("run.idx"), path("run.idx")},
      {"sketch-mips query", "sketch-mips query --index " + path("fixed.idx") + " --queries " + path("realq.txt") +
                                " --data " + path("real.txt"),
       ""},
      {"lowerbound", "lowerbound --case 3 --s 0.0078125 --c 0.5 --verify --audit trials=20000", ""},
  };
  int ok = 0;
  for (const auto& c : cases) {
    std::vector<std::string> outputs;
    std::vector<int> codes;
    for (const char* threads : {"1", "1", "8"}) {
      const auto r = run_cli(std::string("--seed 5 --threads ") + threads + " " + c.args);
      codes.push_back(r.exit_code);
      outputs.push_back(r.out + (c.file.empty() ? std::string() : slurp(c.file)));
    }
    const bool same = outputs[0] == outputs[1] && outputs[0] == outputs[2];
    const bool ran = codes[0] == 0 && codes[1] == 0 && codes[2] == 0 && !outputs[0].empty();
    if (same && ran) ++ok;
    else if (!ran) o.fail(c.name + " exited " + std::to_string(codes[0]));
    else o.fail(c.name + " output differs");
  }
  if (o.pass) o.detail = std::to_string(ok) + " subcommands byte-identical over 2 runs and threads {1, 8}";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"embedding oracle equivalence", criterion1},
      {"gap-profile numbers", criterion2},
      {"OVP pipeline", criterion3},
      {"rho calculator", criterion4},
      {"asymmetric lift", criterion5},
      {"symmetric lift", criterion6},
      {"hyperplane collision law", criterion7},
      {"hard sequences", criterion8},
      {"gap audit", criterion9},
      {"sketch MIPS", criterion10},
      {"determinism", criterion11},
  };
  int failures = 0;
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
