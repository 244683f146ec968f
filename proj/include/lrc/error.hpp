#pragma once

#include <stdexcept>
#include <string>

namespace lrc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called with arguments outside its domain
/// (non-prime characteristic, r out of range, d > s, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Two objects built over different fields were combined.
class FieldMismatch : public Error {
public:
    using Error::Error;
};

/// Division or inversion of zero.
class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// A code whose companion matrix would be empty ({0} or the full space).
class TrivialCodeError : public Error {
public:
    using Error::Error;
};

/// A locality certificate failed verification.
class InvalidCertificate : public Error {
public:
    using Error::Error;
};

/// Malformed text, JSON or recipe input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A word that cannot be completed to a codeword.
class InconsistentWord : public Error {
public:
    using Error::Error;
};

}  // namespace lrc
