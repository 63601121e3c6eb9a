#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <variant>
#include <vector>

#include "ipsjoin/core/vectors.hpp"

namespace ipsjoin {

/// A list of vectors of one domain and one dimension.
///
/// Text format: a header line `# domain=<binary|sign|real> dim=<d> count=<n>`
/// followed by one vector per line. Binary vectors are written as a run of
/// '0'/'1' characters, sign vectors as '+'/'-', real vectors as
/// comma-separated decimals (shortest round-trip representation).
struct Dataset {
  std::size_t dim = 0;
  std::variant<std::vector<BinaryVector>, std::vector<SignVector>, std::vector<RealVector>> rows;

  Domain domain() const noexcept { return static_cast<Domain>(rows.index()); }
  std::size_t size() const;

  template <typename V>
  const std::vector<V>& as() const {
    return std::get<std::vector<V>>(rows);
  }
};

std::string_view domain_name(Domain domain);
Domain parse_domain(std::string_view name);

void write_dataset(std::ostream& out, const Dataset& data);
Dataset read_dataset(std::istream& in);

void save_dataset(const std::filesystem::path& path, const Dataset& data);
Dataset load_dataset(const std::filesystem::path& path);

template <typename V>
Dataset make_dataset(std::vector<V> rows, std::size_t dim) {
  Dataset d;
  d.dim = dim;
  d.rows = std::move(rows);
  return d;
}

}  // namespace ipsjoin
