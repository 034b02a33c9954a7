#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace molent {

/// "%.6e" for error messages.
inline std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.6e", v);
    return b;
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: bad names, violated preconditions, inconsistent parameters.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A state or spectrum that no physical density matrix can have.
class UnphysicalState : public Error {
public:
    using Error::Error;
};

/// Raised by the time propagator. Carries the time (seconds) reached before failure.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double t_reached)
        : Error(what), t_reached_(t_reached) {}

    double t_reached() const noexcept { return t_reached_; }

private:
    double t_reached_;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace molent
