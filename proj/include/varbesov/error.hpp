#pragma once

#include <stdexcept>
#include <string>

namespace varbesov {

/// A theorem hypothesis (a > n/p-, alpha+ < S+1, q+ < infinity, ...) does
/// not hold for the supplied parameters.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed harness configuration or unknown experiment.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace varbesov
