#pragma once

#include <stdexcept>
#include <string>

namespace rd3 {

/// Base class for all library errors. `exit_code()` is the process status
/// the command-line front end reports for this error class.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

/// A requested pattern does not exist for the given parameters.
class ExistenceError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// Argument outside the domain of a formula (fold crossing, singular point).
class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

/// Newton iteration failed to converge.
class NoConvergence : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

/// Slow-orbit interface derivative outside the admissible interval.
class RangeError : public ExistenceError {
public:
    using ExistenceError::ExistenceError;
};

/// Melnikov condition has fewer roots than requested.
class NoRootError : public ExistenceError {
public:
    using ExistenceError::ExistenceError;
};

/// Melnikov root at the ends of (0, L): the two-transition family terminates.
class BoundaryRootError : public ExistenceError {
public:
    using ExistenceError::ExistenceError;
};

/// D*M = 1 in the first-order correction profiles.
class ResonanceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Point outside the requested slow segment.
class IntervalError : public DomainError {
public:
    using DomainError::DomainError;
};

class SingularJacobian : public NoConvergence {
public:
    using NoConvergence::NoConvergence;
};

/// Bisection target not bracketed by the search range.
class NotFound : public Error {
public:
    using Error::Error;
};

}  // namespace rd3
