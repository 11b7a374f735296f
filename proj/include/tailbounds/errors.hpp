#pragma once

#include <stdexcept>
#include <string>

namespace tailbounds {

/// Input data that breaks a type invariant (negative weights, zero mass, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A shape predicate (decreasing, unimodal) required by an operation fails.
class ShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A scalar parameter lies outside an operation's domain (a <= 0, mu < 0, ...).
class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// No distribution in the requested class satisfies the constraints.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An oracle exceeded a proven bound. Always indicates a bug.
class SoundnessViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tailbounds
