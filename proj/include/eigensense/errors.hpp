#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eigensense {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix shape violations: empty matrices, mismatched dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Parameter regimes the detectors deliberately reject (alpha >= 1, K > N).
class UnsupportedRegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Invalid scenario or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Text input that could not be parsed; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Eigensolver did not converge within its sweep budget.
class SolverError : public Error {
public:
    SolverError(const std::string& message, int sweeps)
        : Error(message), sweeps_(sweeps) {}

    int sweeps() const noexcept { return sweeps_; }

private:
    int sweeps_;
};

/// Measured eigenvalue ratio does not exceed the detection threshold, so no
/// SNR estimate exists.
class NotDetectableError : public Error {
public:
    using Error::Error;
};

}  // namespace eigensense
