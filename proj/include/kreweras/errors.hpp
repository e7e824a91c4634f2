#pragma once

#include <stdexcept>
#include <string>

namespace kreweras {

// Exact-series failures. Each of these means an invariant that the closed
// forms guarantee did not hold, so they are never caught internally.
class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonExactDivision : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class NonUnitLeadingCoefficient : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class NotInvertible : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class NegativeTExponent : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class IntegralityViolation : public SeriesError {
 public:
  using SeriesError::SeriesError;
};

class WindowOverflow : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Floating-point validation failures.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionUnreachable : public NumericError {
 public:
  using NumericError::NumericError;
};

class NoBracket : public NumericError {
 public:
  using NumericError::NumericError;
};

class NearPole : public NumericError {
 public:
  using NumericError::NumericError;
};

class SeriesRadius : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateAlpha : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateCase : public NumericError {
 public:
  using NumericError::NumericError;
};

class ToleranceExceeded : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace kreweras
