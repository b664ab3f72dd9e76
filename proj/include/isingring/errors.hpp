#pragma once

#include <stdexcept>
#include <string>

namespace isingring {

/// Base of every error thrown by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A numerical result left its admissible range (e.g. a clearly negative eigenvalue of a density matrix).
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// The degenerate-ground-state convention could not be applied.
class ConventionViolation : public Error {
public:
    using Error::Error;
};

/// Two internal routes disagree in a way that indicates a bug.
class InternalConsistency : public Error {
public:
    using Error::Error;
};

/// Eigenvector continuation along a parameter grid could not pick a unique successor.
class TrackingFailure : public Error {
public:
    using Error::Error;
};

/// The request would need more memory than the dense representation allows.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

}  // namespace isingring
