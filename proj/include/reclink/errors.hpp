#pragma once

#include <stdexcept>
#include <string>

namespace reclink {

// Bad user input: config file, CLI flags, inconsistent PIV declarations.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad data at runtime: malformed CSV, value outside a declared support,
// shape mismatches between files. The CLI maps this to exit code 3.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace reclink
