#pragma once

#include <stdexcept>
#include <string>

namespace rowguard {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed commands, out-of-range coordinates, out-of-order event streams.
struct StructuralError : std::logic_error {
  explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rowguard
