#pragma once

#include <stdexcept>
#include <string>

namespace scalpos {

/// Point outside a chart domain, parameter out of admissible range.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// NaN/Inf encountered, or an iteration failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A differential lost full rank; carries the offending singular value.
class ImmersionError : public std::runtime_error {
public:
    ImmersionError(const std::string& what, double sigma_min)
        : std::runtime_error(what), sigma_min(sigma_min) {}
    double sigma_min = 0.0;
};

/// A documented hypothesis of an operation was violated.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter search exhausted its budget without success.
class SearchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace scalpos
