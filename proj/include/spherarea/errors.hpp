#pragma once

#include <stdexcept>
#include <string>

namespace spherarea {

/// Argument outside the domain of a spherical formula (side length beyond the
/// hemisphere bound, face degree below 3, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoSignChange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MaxIterations : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pattern with non-positive combinatorial curvature or a face degree above 41.
class NotAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MarginTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed catalog input. `where()` names the line/column or field path.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace spherarea
