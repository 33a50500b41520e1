#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

/// Violated precondition or invalid configuration. The CLI maps it to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to deliver its postcondition (non-convergence,
/// collapse, non-finite intermediate). The CLI maps it to exit status 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

}  // namespace detail
}  // namespace fraclab
