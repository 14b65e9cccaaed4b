#pragma once

#include <stdexcept>
#include <string>

namespace plb {

// Bad input: violated precondition, out-of-range parameter, non-integrable weight.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Root search was handed an interval without a sign change.
class BracketError : public DomainError {
public:
    using DomainError::DomainError;
};

// A singular endpoint is too strong for the integral to exist.
class DivergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

// Something went wrong inside a computation that had valid inputs.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative method ran out of budget; carries the last iterate.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double last_value, double residual)
        : NumericError(what), last_value_(last_value), residual_(residual) {}
    double last_value() const { return last_value_; }
    double residual() const { return residual_; }

private:
    double last_value_;
    double residual_;
};

}  // namespace plb
