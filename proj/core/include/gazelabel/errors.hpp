#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gazelabel {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raster dimensions are zero, mismatched, or too small for the operation.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied parameter violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed input text. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace gazelabel
