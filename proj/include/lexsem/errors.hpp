#pragma once

#include <stdexcept>
#include <string>

namespace lexsem {

/// Malformed input file; the message names the offending line.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid experiment configuration. The CLI maps this to exit code 2,
/// everything else to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lexsem
