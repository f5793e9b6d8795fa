#pragma once

#include <stdexcept>
#include <string>

namespace csrap {

/// A document did not conform to its schema. `field()` names the offending key
/// using a dotted path such as `cameras[2].rate_requirement`.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A scenario configuration cannot be realized (for example a camera grid
/// that would need more cameras than requested).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exact solver hit its node budget before proving optimality.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csrap
