#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flexautomata {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed an argument that violates an operation's precondition.
class InputError : public Error {
public:
    using Error::Error;
};

/// Malformed sample or model text. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A sample that no deterministic automaton can be consistent with.
class InconsistentSampleError : public Error {
public:
    using Error::Error;
};

/// A loaded or mutated automaton violates its structural invariants.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Prediction or generation could not produce a value for the given model/input.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The learner hit its configured iteration cap.
class IterationLimitError : public Error {
public:
    using Error::Error;
};

} // namespace flexautomata
