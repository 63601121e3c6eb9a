#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ipsjoin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). The primary report goes
/// to `out`, diagnostics and usage text to `err`. Returns 0 on success, 1 when
/// a verification failed and 2 on a usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ipsjoin::cli
