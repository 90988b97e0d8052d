#pragma once

#include <stdexcept>
#include <string>

namespace idxcode {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Field construction
struct NotPrimePowerError : Error {
  using Error::Error;
};
struct UnsupportedError : Error {
  using Error::Error;
};
struct UnsupportedFieldError : Error {
  using Error::Error;
};

// Shape / input validation
struct DimensionMismatchError : Error {
  using Error::Error;
};
struct SizeMismatchError : Error {
  using Error::Error;
};
struct RangeError : Error {
  using Error::Error;
};
struct LoopError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct BadParametersError : Error {
  using Error::Error;
};
struct TooLargeError : Error {
  using Error::Error;
};

// Search / verification
struct BudgetExceededError : Error {
  using Error::Error;
};
struct InvalidCodeError : Error {
  using Error::Error;
};
struct InvalidWitnessError : Error {
  using Error::Error;
};
struct UnverifiedFunctionError : Error {
  using Error::Error;
};

}  // namespace idxcode
