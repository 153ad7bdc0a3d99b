#pragma once

#include <stdexcept>
#include <string>

namespace sixv {

// Base class for all failures raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested matrix would exceed the configured entry cap.
class SizeError : public Error {
public:
    using Error::Error;
};

// Spectral argument too close to a Boltzmann-weight pole or other singular point.
class SingularArgumentError : public Error {
public:
    using Error::Error;
};

// Iterative procedure (eigensolver, Newton, series) did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Twist/deformation parameters violate the series convergence bound.
class BoundError : public Error {
public:
    using Error::Error;
};

// Truncation window too small for the requested accuracy, or not invariant.
class WindowError : public Error {
public:
    using Error::Error;
};

// Bad run configuration / CLI usage.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace sixv
