#pragma once

#include <stdexcept>
#include <string>

namespace mfp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point is not a member of the carrier (e.g. index out of range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An argument violates an operation's precondition.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// A size guard on an exhaustive enumeration was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Operator evaluation produced a non-finite value.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Sampled data carried no usable information (e.g. every pair degenerate).
class DiagnosticError : public Error {
public:
    using Error::Error;
};

/// Malformed structured input. `where()` is a JSON pointer to the offending node.
class ParseError : public Error {
public:
    ParseError(std::string where, const std::string& what)
        : Error("at " + (where.empty() ? std::string("/") : where) + ": " + what),
          where_(std::move(where)) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace mfp
