#pragma once

#include <stdexcept>
#include <string>

namespace sl2h {

/// Bad input: parameters out of range, malformed files, violated preconditions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A required discrete-series constant has not been calibrated.
class UncalibratedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A numerical procedure failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace sl2h
