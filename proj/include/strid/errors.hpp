#pragma once

#include <stdexcept>
#include <string>

namespace strid {

/// Base class of everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An evaluation point whose variant does not match the coefficient function
/// (e.g. a parameter coordinate evaluated at a frequency point).
struct IncompatibleEvalPoint : Error {
    using Error::Error;
};

/// Structural dimension mismatch between matrices, samples or directions.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// The pencil sum(alpha_i(x) A_i) is singular or too ill-conditioned to solve.
struct SingularPencil : Error {
    SingularPencil(const std::string& what, double cond_estimate)
        : Error(what), condition_estimate(cond_estimate) {}
    double condition_estimate;
};

/// Non-finite intermediate, diverging optimization, or failed factorization.
struct NumericalFailure : Error {
    using Error::Error;
};

/// Conjugate pairing of sample points failed during realification.
struct PairingError : Error {
    using Error::Error;
};

/// File or serialization problem.
struct IoError : Error {
    using Error::Error;
};

/// Invalid user-supplied configuration or argument.
struct InvalidArgument : Error {
    using Error::Error;
};

}  // namespace strid
