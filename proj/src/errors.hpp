#pragma once

#include <stdexcept>
#include <string>

namespace stein {

/// Precondition on a mathematical argument violated (p too small, zero norm, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed input that is not a domain question: length mismatch, bad spec text.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Estimator kind has no closed form for the requested quantity.
class Unsupported : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A series hit its term cap; carries what had been summed so far.
class NotConverged : public std::runtime_error {
public:
  NotConverged(const std::string& what, double partial_sum, long terms)
      : std::runtime_error(what), partial_sum_(partial_sum), terms_(terms) {}

  double partial_sum() const noexcept { return partial_sum_; }
  long terms() const noexcept { return terms_; }

private:
  double partial_sum_;
  long terms_;
};

} // namespace stein
