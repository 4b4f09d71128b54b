#pragma once

#include <stdexcept>
#include <string>

namespace maxenergy {

/// Invalid argument or parameter outside the range where a quantity is finite.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The energy linear system could not produce a mass-one maximizer.
class SolverError : public std::runtime_error {
public:
    enum class Kind { Singular, NotMaximum, DuplicatePoints };

    SolverError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Requested sphere radius is smaller than the Schoenberg radius of the point set.
class RadiusError : public std::runtime_error {
public:
    RadiusError(double min_eigenvalue, double radius, const std::string& what)
        : std::runtime_error(what), min_eigenvalue_(min_eigenvalue), radius_(radius) {}

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }
    double radius() const noexcept { return radius_; }

private:
    double min_eigenvalue_;
    double radius_;
};

/// Malformed input file or record.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace maxenergy
