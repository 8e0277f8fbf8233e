#pragma once

#include <stdexcept>
#include <string>

namespace anisonet {

/// Argument outside the mathematical domain of an operation (x <= 0 for gamma, periodic domain for
/// boundary geometry, overlapping lobes, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Adaptive integration ran out of subdivisions before meeting its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative solver (Thomson relaxation, scaling fit) failed to produce a result.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anisonet

namespace anisonet {

/// Malformed or missing configuration field; `field` names the offending entry.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace anisonet
