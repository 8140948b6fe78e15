#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, or 0 when the error is not tied
/// to a line (e.g. a position in an in-memory edge list).
class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An argument violated a documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative solver hit its iteration cap before reaching tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string &what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace gmat
