/**
 * @file errors.h
 *
 * Exception types shared by all modules. The CLI maps SemanticError to exit
 * code 1 and IoError / SyntaxError to exit code 2.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace whyprov {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Unsafe rules, unknown predicates, arity mismatches, recursion, bad questions. */
class SemanticError : public Error {
public:
    using Error::Error;
};

/** Raised by the direct method when the grounding would exceed its size guard. */
class SizeGuardError : public SemanticError {
public:
    using SemanticError::SemanticError;
};

/** Unreadable files and malformed CSV / config input. */
class IoError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
            : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line),
              column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace whyprov
