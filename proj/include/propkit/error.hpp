#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace propkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked 64-bit operation would have wrapped.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Input is not a linear expression/constraint (e.g. `x * y`).
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// The brute-force oracle was asked to enumerate more tuples than allowed.
class OracleTooLarge : public Error {
public:
    using Error::Error;
};

/// A scripted derivation step could not be applied.
class ReplayError : public Error {
public:
    ReplayError(std::size_t step, const std::string& what)
        : Error("replay step " + std::to_string(step) + ": " + what), step_(step) {}

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Model text could not be parsed. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace propkit
