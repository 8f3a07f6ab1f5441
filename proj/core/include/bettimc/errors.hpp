#pragma once

#include <stdexcept>
#include <string>

namespace bettimc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad caller input: out-of-range vertex, a set that is not a face, invalid parameters.
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed complex or graph file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::size_t line)
        : InputError(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Requested dimension has no faces (d_k = 0).
class EmptyDimensionError : public InputError {
public:
    using InputError::InputError;
};

/// A sample count that cannot be honoured (overflow, or above the budget limit in strict mode).
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Instance too large for the dense ground-truth routines.
class OracleScaleError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

/// Internal precondition broken by the caller (programming error rather than bad data).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace bettimc
