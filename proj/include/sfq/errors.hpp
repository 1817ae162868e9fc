#pragma once

#include <stdexcept>
#include <string>

namespace sfq {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A lattice basis (or metric) whose matrix is not invertible.
struct SingularBasisError : Error {
    using Error::Error;
};

/// Operands with incompatible dimensions.
struct DimensionMismatchError : Error {
    using Error::Error;
};

/// A numeric argument outside its valid range (t <= 0, negative radius, ...).
struct DomainError : Error {
    using Error::Error;
};

/// The truncation radius needed to meet a tolerance exceeds the hard cap.
/// Usually means the diffusion time is too small for the requested accuracy.
struct TruncationCapError : Error {
    using Error::Error;
};

/// A quadrature rule too coarse for the mode content of its integrand.
struct QuadratureResolutionError : Error {
    using Error::Error;
};

/// A truncated basis sum that failed its convergence criterion.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Finite-difference noise floor exceeds the signal being measured.
struct FdBreakdownError : Error {
    using Error::Error;
};

/// Malformed or out-of-range configuration input; carries the offending key.
struct ConfigError : Error {
    explicit ConfigError(const std::string& key, const std::string& what)
        : Error("config key '" + key + "': " + what), key(key) {}
    std::string key;
};

}  // namespace sfq
