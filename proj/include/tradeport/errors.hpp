#pragma once

#include <stdexcept>

namespace tradeport {

// Error categories; the CLI maps each to a distinct exit code (see cli.hpp).

// Missing or unreadable file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input data (bad row, bad code, bad number).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameters, rules, or format descriptors.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally valid inputs that cannot support the requested computation
// (empty join, too few points, zero variance, ...).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tradeport
