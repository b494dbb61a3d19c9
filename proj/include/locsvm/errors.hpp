#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace locsvm {

/// Invalid loss/kernel parameters or malformed configuration documents.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Points of different dimension, or outside a kernel's admissible domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gram matrix failed the positive-semidefiniteness check.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The solver ran out of iterations before meeting the certificate tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double best_residual,
                std::optional<std::size_t> region = std::nullopt)
        : std::runtime_error(what), best_residual_(best_residual), region_(region) {}

    double best_residual() const noexcept { return best_residual_; }
    std::optional<std::size_t> region() const noexcept { return region_; }

private:
    double best_residual_;
    std::optional<std::size_t> region_;
};

/// A region (or intersection piece) carries zero probability mass, or a point
/// is not covered by the regionalization.
class RegionError : public std::runtime_error {
public:
    explicit RegionError(const std::string& what,
                         std::optional<std::size_t> region = std::nullopt)
        : std::runtime_error(what), region_(region) {}

    std::optional<std::size_t> region() const noexcept { return region_; }

private:
    std::optional<std::size_t> region_;
};

}  // namespace locsvm
