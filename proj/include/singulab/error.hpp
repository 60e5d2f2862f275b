#pragma once

#include <stdexcept>
#include <string>

namespace singulab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a formula (q <= 1, r <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The (N, q, m) triple is outside the range where an operation is defined.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure failed to deliver a result (no bracket, divergence).
class NumericalError : public Error {
public:
    using Error::Error;
};

class NoBracket : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MaxIterExceeded : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Model selection could not separate the candidates.
class Ambiguous : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientWindow : public Error {
public:
    using Error::Error;
};

}  // namespace singulab
