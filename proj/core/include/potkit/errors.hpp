#pragma once

#include <stdexcept>
#include <string>

namespace potkit {

/// Failure of a numerical procedure (non-convergence, singular system, ...).
/// Precondition violations use std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested an operation that needs a positive (semi)definite spectrum
/// while the input has an eigenvalue below the allowed tolerance.
class NotPositiveDefiniteError : public NumericalError {
public:
    NotPositiveDefiniteError(const std::string& what, double offending)
        : NumericalError(what), offending_eigenvalue(offending) {}

    double offending_eigenvalue;
};

} // namespace potkit
