#pragma once

#include <stdexcept>
#include <string>

namespace lm {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation at a pole of the function (e.g. digamma at 0, -1, ...).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// The requested accuracy cannot be reached: quadrature did not settle,
// an acceleration stagnated, or a series lost too many digits.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class UnknownIdentity : public Error {
public:
    using Error::Error;
};

} // namespace lm
