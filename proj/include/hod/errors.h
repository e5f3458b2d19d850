#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hod {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arguments whose sizes do not agree (exponent length, point length, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Bad argument values that are not dimension related (d < 1, zero direction).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Non-finite input or evaluation, divergence.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// The supplied point does not satisfy the system to the requested tolerance.
class NotARootError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Dual space dimensions kept growing up to the degree bound.
class NonIsolatedError : public NumericalError {
 public:
  NonIsolatedError(const std::string& what, std::vector<int> dims)
      : NumericalError(what), dims_(std::move(dims)) {}
  const std::vector<int>& dims() const { return dims_; }

 private:
  std::vector<int> dims_;
};

// The point is regular; deflation is not applicable.
class AlreadyRegularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A[d](x0) has full column rank, no deflation operator of this order exists.
class OrderTooLowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The line-restricted system has no usable support.
class InconclusiveError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A dual basis that is numerically dependent.
class DegenerateBasisError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace hod
