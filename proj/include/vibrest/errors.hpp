#pragma once

#include <stdexcept>
#include <string>

namespace vibrest {

/// Input data failed a semantic check (bad index, missing conjugate
/// partner, schema violation). CLI maps this to exit code 3.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A computation exceeded its configured work budget. CLI maps this to
/// exit code 4.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace vibrest
