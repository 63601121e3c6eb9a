#include "ipsjoin/core/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ipsjoin {
namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("dataset line " + std::to_string(line) + ": bad number '" +
                             std::string(s) + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view s, std::string_view key) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("dataset header: bad value for " + std::string(key));
  }
  return v;
}

template <typename V>
V parse_bits(std::string_view line, std::size_t dim, std::size_t lineno, char one, char zero) {
  if (line.size() != dim) {
    throw std::runtime_error("dataset line " + std::to_string(lineno) + ": expected " +
                             std::to_string(dim) + " symbols, got " + std::to_string(line.size()));
  }
  typename V::Builder b(dim);
  for (const char ch : line) {
    if (ch == one) {
      b.push_bit(true);
    } else if (ch == zero) {
      b.push_bit(false);
    } else {
      throw std::runtime_error("dataset line " + std::to_string(lineno) + ": bad symbol '" +
                               std::string(1, ch) + "'");
    }
  }
  return std::move(b).finish();
}

}  // namespace

std::size_t Dataset::size() const {
  return std::visit([](const auto& v) { return v.size(); }, rows);
}

std::string_view domain_name(Domain domain) {
  switch (domain) {
    case Domain::kBinary:
      return "binary";
    case Domain::kSign:
      return "sign";
    case Domain::kReal:
      return "real";
  }
  return "unknown";
}

Domain parse_domain(std::string_view name) {
  if (name == "binary") return Domain::kBinary;
  if (name == "sign") return Domain::kSign;
  if (name == "real") return Domain::kReal;
  throw std::invalid_argument("unknown domain '" + std::string(name) + "'");
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out << "# domain=" << domain_name(data.domain()) << " dim=" << data.dim
      << " count=" << data.size() << '\n';
  std::string line;
  std::visit(
      [&](const auto& rows) {
        using V = typename std::decay_t<decltype(rows)>::value_type;
        for (const V& v : rows) {
          if (v.dim() != data.dim) throw std::invalid_argument("write_dataset: row dimension mismatch");
          line.clear();
          if constexpr (std::is_same_v<V, RealVector>) {
            for (std::size_t i = 0; i < v.dim(); ++i) {
              if (i) line.push_back(',');
              line += format_double(v[i]);
            }
          } else {
            // Set bit = '1' for binary, '-' for sign.
            const char one = V::kIsSign ? '-' : '1';
            const char zero = V::kIsSign ? '+' : '0';
            for (std::size_t i = 0; i < v.dim(); ++i) line.push_back(v.bit(i) ? one : zero);
          }
          out << line << '\n';
        }
      },
      data.rows);
}

Dataset read_dataset(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("dataset: missing header");
  if (header.rfind("# ", 0) != 0) throw std::runtime_error("dataset: header must start with '# '");

  std::istringstream fields(header.substr(2));
  std::string field;
  std::string domain_str;
  std::size_t dim = 0;
  std::size_t count = 0;
  bool have_dim = false;
  bool have_count = false;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("dataset header: malformed field '" + field + "'");
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "domain") {
      domain_str = value;
    } else if (key == "dim") {
      dim = parse_size(value, key);
      have_dim = true;
    } else if (key == "count") {
      count = parse_size(value, key);
      have_count = true;
    } else {
      throw std::runtime_error("dataset header: unknown field '" + key + "'");
    }
  }
  if (domain_str.empty() || !have_dim || !have_count) {
    throw std::runtime_error("dataset header: need domain, dim and count");
  }

  Dataset data;
  data.dim = dim;
  const Domain domain = parse_domain(domain_str);
  std::string line;
  std::size_t lineno = 1;
  auto next_line = [&]() -> std::string_view {
    ++lineno;
    if (!std::getline(in, line)) {
      throw std::runtime_error("dataset: expected " + std::to_string(count) + " rows, file ended early");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };

  if (domain == Domain::kReal) {
    std::vector<RealVector> rows;
    rows.reserve(count);
    for (std::size_t r = 0; r < count; ++r) {
      const std::string_view text = next_line();
      std::vector<double> values;
      values.reserve(dim);
      std::size_t start = 0;
      while (dim > 0) {
        const std::size_t comma = text.find(',', start);
        values.push_back(parse_double(text.substr(start, comma - start), lineno));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      if (values.size() != dim) {
        throw std::runtime_error("dataset line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(dim) + " values");
      }
      RealVector v(std::move(values));
      v.check_finite();
      rows.push_back(std::move(v));
    }
    data.rows = std::move(rows);
  } else if (domain == Domain::kBinary) {
    std::vector<BinaryVector> rows;
    rows.reserve(count);
    for (std::size_t r = 0; r < count; ++r) rows.push_back(parse_bits<BinaryVector>(next_line(), dim, lineno, '1', '0'));
    data.rows = std::move(rows);
  } else {
    std::vector<SignVector> rows;
    rows.reserve(count);
    for (std::size_t r = 0; r < count; ++r) rows.push_back(parse_bits<SignVector>(next_line(), dim, lineno, '-', '+'));
    data.rows = std::move(rows);
  }
  return data;
}

void save_dataset(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_dataset(out, data);
  if (!out) throw std::runtime_error("write failed: '" + path.string() + "'");
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_dataset(in);
}

}  // namespace ipsjoin
