#pragma once

#include <stdexcept>
#include <string>

namespace ktbench {

/// Invalid parameters (negative widths, unknown names, bad splits). The CLI
/// maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// An exhaustive enumeration would exceed its configured budget. Raised
/// instead of returning an approximation.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

class LengthMismatch : public std::invalid_argument {
 public:
  explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ktbench
