#pragma once

#include <stdexcept>
#include <string>

namespace lfbo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise malformed argument.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. a point
/// outside the search space, a probability on the boundary of (0,1)).
class DomainError : public Error {
public:
    using Error::Error;
};

class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

/// Training requested on data with no positive-weight sample.
class DegenerateTrainingError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. `row()` is the 1-based line number when known, 0 otherwise.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row = 0) : Error(what), row_(row) {}
    [[nodiscard]] std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace lfbo
