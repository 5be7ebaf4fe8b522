#pragma once

#include <stdexcept>
#include <string>

namespace sphdeconv {

/// Invalid input or configuration. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the range an evaluation routine supports.
class RangeError : public ConfigError {
 public:
  explicit RangeError(const std::string& what) : ConfigError(what) {}
};

/// Non-finite contrast, degenerate regression and similar. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sphdeconv
