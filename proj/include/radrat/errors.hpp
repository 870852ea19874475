#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace radrat {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mathematically invalid input: division by zero, radicand < 1, n < 2 for factorize.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A configured cap (dimension, precision, enumeration, factoring effort) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A precondition of an operation does not hold for the given input.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Syntax or semantic error in model/expression text, with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A constraint mentions a continuous variable, so the rationality argument does not apply.
class NotRationalizableError : public Error {
public:
    using Error::Error;
};

} // namespace radrat
