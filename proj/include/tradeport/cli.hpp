#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tradeport::cli {

inline constexpr std::string_view kVersion = "0.1.0";

// Exit codes: 0 success, 2 missing/unreadable input, 3 malformed data,
// 4 invalid parameters, 5 insufficient data (empty join etc.), 1 other.
enum ExitCode {
  kOk = 0,
  kFailure = 1,
  kIoError = 2,
  kParseError = 3,
  kConfigError = 4,
  kDataError = 5,
};

// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace tradeport::cli
