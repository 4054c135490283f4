#pragma once

#include <stdexcept>
#include <string>

namespace relaynet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input that fails a precondition: malformed rationals, invalid distributions,
/// mismatched state counts, bad targets, bad mappings.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class MissingAssignmentError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class InvalidTargetError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class InsufficientSwitchSetError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// The requested operation is not defined for this circuit shape or spec.
class UnsupportedError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// An enumeration would exceed its configured cap.
class CapacityError : public Error {
  public:
    using Error::Error;
};

}  // namespace relaynet
