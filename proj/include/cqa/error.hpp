#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cqa {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a semantic requirement (arity, safety,
/// unknown predicate, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configured resource bound was exceeded. Never a silent truncation.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// Raised by cautious reasoning when a program has no stable model.
class InconsistentProgram : public Error {
public:
    InconsistentProgram() : Error("inconsistent program (no stable models)") {}
};

}  // namespace cqa
