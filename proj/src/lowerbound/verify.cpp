#include "ipsjoin/lowerbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ipsjoin/core/parallel.hpp"
#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::lowerbound {

namespace {

constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct RowResult {
  double upper = kInf;
  double lower = kInf;
  std::optional<std::size_t> bad_column;
};

}  // namespace

VerifyReport verify_sequence(const HardSequence& seq) { return verify_sequence(seq, seq.natural_mode()); }

VerifyReport verify_sequence(const HardSequence& seq, JoinMode mode) {
  VerifyReport report;
  report.mode = mode;
  report.n = seq.size();
  report.upper_margin = kInf;
  report.lower_margin = kInf;
  if (seq.P.size() != seq.Q.size()) {
    report.pass = false;
    report.failure = "query and data sequences differ in length";
    return report;
  }
  const std::size_t n = seq.size();
  const double s = seq.s;
  const double cs = seq.c * seq.s;

  std::vector<RowResult> rows(n);
  parallel_for(n, [&](std::size_t i) {
    RowResult& r = rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double dot = simd::dot(seq.Q[i].values(), seq.P[j].values());
      const double sim = mode == JoinMode::kSigned ? dot : std::abs(dot);
      bool ok = true;
      if (j >= i) {
        r.upper = std::min(r.upper, sim - s);
        ok = sim >= s * (1.0 - kTol);
      } else {
        r.lower = std::min(r.lower, cs - sim);
        ok = sim <= cs * (1.0 + kTol);
      }
      if (!ok && !r.bad_column) r.bad_column = j;
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    report.upper_margin = std::min(report.upper_margin, rows[i].upper);
    report.lower_margin = std::min(report.lower_margin, rows[i].lower);
    if (rows[i].bad_column && !report.offending) {
      report.offending = std::make_pair(i, *rows[i].bad_column);
      report.pass = false;
      report.failure = "staircase violated at (" + std::to_string(i) + ", " + std::to_string(*rows[i].bad_column) + ")";
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double qn = seq.Q[i].norm();
    const double pn = seq.P[i].norm();
    report.max_query_norm = std::max(report.max_query_norm, qn);
    report.max_data_norm = std::max(report.max_data_norm, pn);
    if (report.pass && qn > seq.U * (1.0 + kTol)) {
      report.pass = false;
      report.failure = "query " + std::to_string(i) + " outside the radius-U ball";
    }
    if (report.pass && pn > 1.0 + kTol) {
      report.pass = false;
      report.failure = "data vector " + std::to_string(i) + " outside the unit ball";
    }
  }
  return report;
}

}  // namespace ipsjoin::lowerbound
