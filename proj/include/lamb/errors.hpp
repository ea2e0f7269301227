#pragma once

#include <stdexcept>
#include <string>

namespace lamb {

/// Input outside the mathematical domain of an operation (negative speed,
/// non-positive frequency, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input inside the domain but outside the regime the formulas are valid for
/// (relativistic speed, cutoff not dominating, ...).
class ValidityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature stopped before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string &what, double achieved)
      : std::runtime_error(what), achieved_error_(achieved) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace lamb
