#pragma once

#include <stdexcept>
#include <string>

namespace morrey {

/// Base class of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematically invalid request (point outside the grid extents,
/// lambda outside (0,1], norm exponent below 1, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Request below the discretization floor. Carries the smallest radius the
/// grid can resolve so callers can truncate ladders instead of guessing.
struct ResolutionError : Error {
    ResolutionError(const std::string& msg, double min_r)
        : Error(msg), min_radius(min_r) {}
    double min_radius;
};

/// Invalid configuration (grid too small for a stencil, under-resolved
/// wavelength, delta below the mollification floor, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// A documented precondition between objects was violated (cutoff not
/// vanishing near the parabolic boundary, transport field not
/// divergence-free, bump support touching the boundary, ...).
struct ContractError : Error {
    using Error::Error;
};

/// File format or filesystem failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace morrey
