#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conceptq {

// Base for every failure raised by the library. The CLI maps
// ModelInfeasible (and subclasses) to exit code 2 and everything else to 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// A zero in the A or B column: the phase formula divides by sqrt(mu_a * mu_b).
class DegenerateInputError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionError : public Error {
public:
    DimensionError(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: " + std::to_string(expected) + " vs " +
                std::to_string(actual)) {}
};

class IndexError : public Error {
public:
    using Error::Error;
};

// Caller broke a documented precondition; residual carries the measured violation.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// The data admit no model of the requested form. value() is the offending
// quantity (a negative radicand, c_m > 1, an arccos argument, ...).
class ModelInfeasible : public Error {
public:
    ModelInfeasible(const std::string& what, double value) : Error(what), value_(value) {}

    double value() const noexcept { return value_; }

private:
    double value_;
};

// c_m == 0: the data are classically additive in a way the construction cannot represent.
class DegenerateModelError : public ModelInfeasible {
public:
    using ModelInfeasible::ModelInfeasible;
};

class FitError : public Error {
public:
    using Error::Error;
};

} // namespace conceptq
