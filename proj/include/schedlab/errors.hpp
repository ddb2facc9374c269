#pragma once

#include <stdexcept>
#include <string>

namespace schedlab {

/// Thrown when an exact search or pricing routine would exceed its work
/// budget.  Signals "too large for exact treatment", not a wrong answer.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an operation's stated precondition does not hold for the
/// given input (e.g. a processing time outside the required band).
class PreconditionViolated : public std::invalid_argument {
public:
    explicit PreconditionViolated(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown by instance/certificate parsers; carries a 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace schedlab
