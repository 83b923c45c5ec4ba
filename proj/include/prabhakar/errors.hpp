#pragma once

#include <stdexcept>
#include <string>

namespace prabhakar {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument sits (numerically) on a pole of the gamma function.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Parameter conditions for series convergence are violated.
class ConditionError : public Error {
public:
    using Error::Error;
};

/// Series hit its term cap with a non-negligible last term.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the operator's domain (x <= c and similar).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input function lacks the derivatives an operation requires.
class SmoothnessError : public Error {
public:
    using Error::Error;
};

/// Quadrature error estimate exceeds the acceptable bound.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Parameter outside the admissible range of a model.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Malformed job specification or CLI configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace prabhakar
