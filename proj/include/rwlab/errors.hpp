#pragma once

#include <stdexcept>
#include <string>

namespace rwlab {

// Invalid configuration or a point/parameter outside the admissible region.
// The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidInput : public DomainError {
public:
    explicit InvalidInput(const std::string& msg) : DomainError(msg) {}
};

// Numeric failures during evaluation. The CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// -1 + f^2*E_tilde fell below the frame guard; the adapted frame blows up.
class DegenerateFrameError : public NumericError {
public:
    explicit DegenerateFrameError(const std::string& msg) : NumericError(msg) {}
};

// The tangential part of d/dt vanishes: the surface sits in a slice {t0} x Q^3.
class SliceSurfaceError : public NumericError {
public:
    explicit SliceSurfaceError(const std::string& msg) : NumericError(msg) {}
};

// Induced metric stopped being positive-definite.
class CausalDegeneracyError : public NumericError {
public:
    explicit CausalDegeneracyError(const std::string& msg) : NumericError(msg) {}
};

// Finite-difference jet requested too close to the patch boundary.
class JetError : public NumericError {
public:
    explicit JetError(const std::string& msg) : NumericError(msg) {}
};

}  // namespace rwlab
