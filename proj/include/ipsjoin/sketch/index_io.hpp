#pragma once

#include <filesystem>
#include <iosfwd>

#include "ipsjoin/sketch/mips_index.hpp"

namespace ipsjoin::sketch {

/// Binary container: magic "IPSK1", then little-endian
///   u64 n, u64 d, f64 kappa, u32 copies, u64 seed, f64 C, u64 node count,
/// and per node: u32 level, u64 prefix, u64 begin, u64 end, then per copy
/// u64 m followed by m*d f64 values.
void write_index(std::ostream& out, const MipsIndex& index);
/// Throws std::runtime_error on a bad magic, truncation, or inconsistent sizes.
MipsIndex read_index(std::istream& in);

void save_index(const std::filesystem::path& path, const MipsIndex& index);
MipsIndex load_index(const std::filesystem::path& path);

}  // namespace ipsjoin::sketch
