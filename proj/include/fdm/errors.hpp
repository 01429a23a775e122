#pragma once

#include <stdexcept>
#include <string>

namespace fdm {

// Evaluation left the real domain of an expression (ln/sqrt of a negative,
// division by zero). The message names the offending subexpression.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax or lookup failure while parsing an expression. `column` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int column)
        : std::runtime_error(msg + " (column " + std::to_string(column) + ")"),
          column_(column) {}

    int column() const { return column_; }

private:
    int column_;
};

// Failure inside a solver run, annotated with the x location when known.
class SolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fdm
