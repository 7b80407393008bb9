#pragma once

#include <stdexcept>
#include <string>

namespace qlevy {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A malformed argument: bad interval, out-of-range kernel parameter, etc.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An enumeration or quadrature request exceeded its configured cost guard.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// The request is well-formed but outside the numerical domain of an engine
/// (grid misalignment, insufficient Fock depth, horizon overflow).
class DomainError : public Error {
public:
    using Error::Error;
};

class AlignmentError : public DomainError {
public:
    using DomainError::DomainError;
};

class DepthError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace qlevy
