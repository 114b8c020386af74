#ifndef SIMPLEFRAC_ERRORS_HPP
#define SIMPLEFRAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace simplefrac {

/// Input outside the mathematical domain of an operation (|c| >= 1, p <= 1, w = 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The construction is defined but the optimality statement it backs needs a
/// stronger hypothesis (e.g. a > sqrt(2) for the weighted extremal fraction).
class OutOfTheoremRange : public DomainError {
public:
  using DomainError::DomainError;
};

/// Invalid object construction: coincident nodes, duplicated poles, missing conjugates.
class ConstructionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SizeError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Evaluation at (or numerically on top of) a pole.
class EvaluationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An iterative refinement stopped before reaching its tolerance. Carries the
/// best estimate found so callers can still report it.
class ToleranceNotMet : public std::runtime_error {
public:
  ToleranceNotMet(const std::string& what, double best_value, double best_location)
      : std::runtime_error(what), best_value_(best_value), best_location_(best_location) {}

  double best_value() const noexcept { return best_value_; }
  double best_location() const noexcept { return best_location_; }

private:
  double best_value_;
  double best_location_;
};

class NotApplicable : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace simplefrac

#endif
