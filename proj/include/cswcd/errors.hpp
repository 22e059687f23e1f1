#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cswcd {

/// Argument outside the mathematical domain of an operation (|c| >= 1, alpha <= -1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operands with mismatched truncation orders or matrix dimensions.
class LengthError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Evaluation at a pole of a linear fractional map.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A boundedness gate refused to build or certify an operator. Reported as
/// "unverified", never as a failed check.
class GateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid run configuration. `path` names the offending field, e.g. "symbols.c".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace cswcd
