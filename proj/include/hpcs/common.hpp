#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hpcs {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parameters outside the domain an operation accepts.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure did not reach its tolerance (series, truncation,
/// overflow of a recursion).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// The truncated Fock basis was too small for the requested operation.
class GuardBandError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Relative difference measured against the larger magnitude plus an
/// absolute floor; densities vanish exponentially in the tails.
inline double relative_difference(Complex a, Complex b, double floor = 1e-12)
{
    return std::abs(a - b) / (std::max(std::abs(a), std::abs(b)) + floor);
}

/// Principal argument wrapped to (-pi, pi].
inline double wrap_angle(double a)
{
    return std::remainder(a, 2.0 * pi);
}

}  // namespace hpcs
