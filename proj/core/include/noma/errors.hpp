#pragma once

#include <stdexcept>
#include <string>

namespace noma {

// Input rejected before any computation ran. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A proven identity failed to hold. Always an implementation bug; exit code 3.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class BothZeroError : public ValidationError {
public:
    BothZeroError() : ValidationError("fraction 0/0 is undefined") {}
};

class BoundTooLargeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class SilentUserError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotADivisorError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ConfigInvalidError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PropertyViolation : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

class SuperiorityViolated : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

}  // namespace noma
