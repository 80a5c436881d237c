#pragma once

#include <stdexcept>
#include <string>

namespace caplab {

// Root of every error raised by the library. The CLI maps all of these to
// exit status 2 (numerical or configuration failure).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside the documented domain of an operation (|q| >= 1, R not in (0, pi), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// |F'(z)| below threshold: the map is not locally injective near z.
class DegenerateDerivative : public Error {
public:
    using Error::Error;
};

// Two resolutions of the same quantity disagree by more than the configured tolerance.
class ResolutionError : public Error {
public:
    using Error::Error;
};

// Cumulative area could not be inverted (not strictly monotone at quadrature resolution).
class InversionError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

// First eigenfunction is not strictly positive.
class SignChangeError : public Error {
public:
    using Error::Error;
};

class ProfileMismatch : public Error {
public:
    using Error::Error;
};

// Winding number of V on the probe circle is not 1.
class DegreeError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace caplab
