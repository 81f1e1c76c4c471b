#pragma once

#include <stdexcept>
#include <string>

namespace nplet {

/// Precondition violated by the caller (bad tuple, zero polynomial, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact arithmetic refused to proceed, e.g. dense conversion past the
/// degree cap.
class ArithmeticRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric and exact evidence disagree; the caller must escalate precision.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity contradicts a proven bound. Always a bug or a
/// finding, never a recoverable condition.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nplet
