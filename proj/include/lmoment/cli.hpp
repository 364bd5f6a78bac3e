#pragma once

// Command-line front end. Exit codes: 0 success, 1 a verification failed,
// 2 usage or argument error, 3 unexpected internal error.

#include <ostream>
#include <string>
#include <vector>

namespace lmoment::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// args excludes the program name. Output goes to `out` unless --output is
/// given; diagnostics and usage text go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lmoment::cli
