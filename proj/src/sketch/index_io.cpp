#include "ipsjoin/sketch/index_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace ipsjoin::sketch {

namespace {

constexpr std::array<char, 5> kMagic = {'I', 'P', 'S', 'K', '1'};

template <typename T>
void put(std::ostream& out, T value) {
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(value);
  } else {
    bits = static_cast<std::uint64_t>(value);
  }
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("sketch index file is truncated");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
  if constexpr (std::is_same_v<T, double>) {
    return std::bit_cast<double>(bits);
  } else {
    return static_cast<T>(bits);
  }
}

}  // namespace

void write_index(std::ostream& out, const MipsIndex& index) {
  const SketchParams& p = index.params();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint64_t>(out, index.size());
  put<std::uint64_t>(out, index.dim());
  put<double>(out, p.kappa);
  put<std::uint32_t>(out, p.copies);
  put<std::uint64_t>(out, p.seed.value);
  put<double>(out, p.C);
  put<std::uint64_t>(out, index.nodes().size());
  for (const MipsNode& node : index.nodes()) {
    put<std::uint32_t>(out, node.level);
    put<std::uint64_t>(out, node.prefix);
    put<std::uint64_t>(out, node.begin);
    put<std::uint64_t>(out, node.end);
    for (const auto& rows : node.copies) {
      put<std::uint64_t>(out, rows.size() / index.dim());
      for (double v : rows) put<double>(out, v);
    }
  }
  if (!out) throw std::runtime_error("failed to write sketch index");
}

MipsIndex read_index(std::istream& in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("not a sketch index file (bad magic)");
  const auto n = get<std::uint64_t>(in);
  const auto d = get<std::uint64_t>(in);
  SketchParams params;
  params.kappa = get<double>(in);
  params.copies = get<std::uint32_t>(in);
  params.seed.value = get<std::uint64_t>(in);
  params.C = get<double>(in);
  const auto count = get<std::uint64_t>(in);
  if (n == 0 || d == 0 || count > 2 * n + 64 || params.copies == 0 || params.copies > (1u << 16))
    throw std::runtime_error("sketch index header is inconsistent");
  std::vector<MipsNode> nodes(count);
  for (MipsNode& node : nodes) {
    node.level = get<std::uint32_t>(in);
    node.prefix = get<std::uint64_t>(in);
    node.begin = get<std::uint64_t>(in);
    node.end = get<std::uint64_t>(in);
    if (node.begin >= node.end || node.end > n) throw std::runtime_error("sketch index node range is invalid");
    node.copies.resize(params.copies);
    for (auto& rows : node.copies) {
      const auto m = get<std::uint64_t>(in);
      if (m == 0 || m > node.end - node.begin) throw std::runtime_error("sketch index row count is invalid");
      rows.resize(m * d);
      for (double& v : rows) v = get<double>(in);
    }
  }
  try {
    return MipsIndex::from_parts(n, d, params, std::move(nodes));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("sketch index is inconsistent: ") + e.what());
  }
}

void save_index(const std::filesystem::path& path, const MipsIndex& index) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_index(out, index);
}

MipsIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_index(in);
}

}  // namespace ipsjoin::sketch
