#pragma once

#include <stdexcept>
#include <string>

namespace maglap {

/// Bad arguments: wrong sizes, out-of-range parameters, invalid geometry.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Fewer than three non-collinear points, or a polygon that collapses.
class DegenerateInput : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Inconsistent experiment setup (unresolved spectra, bad fiber options, ...).
class ConfigurationError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Special-function argument outside the supported domain.
class DomainError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptySystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure: non-SPD mass matrix, iteration caps, missing roots.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FactorizationError : public SolverError {
public:
    using SolverError::SolverError;
};

class NoRootError : public SolverError {
public:
    NoRootError(const std::string& what, double ceiling)
        : SolverError(what), ceiling_(ceiling) {}
    double ceiling() const noexcept { return ceiling_; }

private:
    double ceiling_;
};

}  // namespace maglap
