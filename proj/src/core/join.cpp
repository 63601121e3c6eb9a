#include "ipsjoin/core/join.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "ipsjoin/core/parallel.hpp"

namespace ipsjoin {

JoinSpec::JoinSpec(double s_, double c_, JoinMode mode_) : s(s_), c(c_), mode(mode_) {
  if (!(s > 0.0)) throw std::invalid_argument("join threshold s must be positive");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("approximation c must lie in (0, 1)");
}

double JoinSpec::similarity(double inner) const noexcept {
  return mode == JoinMode::kUnsigned ? std::fabs(inner) : inner;
}

double dataset_inner_product(const Dataset& a, std::size_t i, const Dataset& b, std::size_t j) {
  if (a.rows.index() != b.rows.index()) throw std::invalid_argument("datasets differ in domain");
  return std::visit(
      [&](const auto& rows) -> double {
        using Rows = std::decay_t<decltype(rows)>;
        return static_cast<double>(inner_product(rows[i], std::get<Rows>(b.rows)[j]));
      },
      a.rows);
}

std::vector<RealVector> to_real(const Dataset& data) {
  return std::visit(
      [](const auto& rows) {
        using V = typename std::decay_t<decltype(rows)>::value_type;
        if constexpr (std::is_same_v<V, RealVector>) {
          return rows;
        } else {
          std::vector<RealVector> out;
          out.reserve(rows.size());
          for (const V& v : rows) {
            std::vector<double> values(v.dim());
            for (std::size_t i = 0; i < v.dim(); ++i) values[i] = v[i];
            out.emplace_back(std::move(values));
          }
          return out;
        }
      },
      data.rows);
}

std::vector<JoinPair> BruteForceJoiner::join(const Dataset& data, const Dataset& queries,
                                             const JoinSpec& spec) const {
  if (data.size() > 0 && queries.size() > 0 && data.dim != queries.dim) {
    throw std::invalid_argument("join: data and queries differ in dimension");
  }
  std::vector<std::optional<JoinPair>> slots(queries.size());
  parallel_for(queries.size(), [&](std::size_t j) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double v = dataset_inner_product(data, i, queries, j);
      if (spec.similarity(v) >= spec.s) {
        slots[j] = JoinPair{i, j, v};
        return;
      }
    }
  });
  std::vector<JoinPair> out;
  for (const auto& s : slots) {
    if (s) out.push_back(*s);
  }
  return out;
}

}  // namespace ipsjoin
