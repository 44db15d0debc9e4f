#pragma once

#include <stdexcept>
#include <string>

namespace smqt {

// Raised for malformed or inconsistent run configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the integration produces non-finite data or a stability
// precondition fails (CLI exit code 2).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smqt
