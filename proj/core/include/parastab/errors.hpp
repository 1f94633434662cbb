#pragma once

#include <stdexcept>
#include <string>

namespace parastab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (bad parameters, bad sizes).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Base class for numerical failures (maps to CLI exit code 3).
class NumericError : public Error {
public:
    using Error::Error;
};

/// The adaptive integrator needed a step below its round-off floor.
class StepSizeUnderflow : public NumericError {
public:
    StepSizeUnderflow(double t, double h)
        : NumericError("step size underflow at t=" + std::to_string(t) +
                       " (h=" + std::to_string(h) + ")"),
          t_(t), h_(h) {}

    double time() const noexcept { return t_; }
    double step() const noexcept { return h_; }

private:
    double t_;
    double h_;
};

/// The integrator produced a non-finite state.
class NonFiniteState : public NumericError {
public:
    explicit NonFiniteState(double t)
        : NumericError("non-finite state at t=" + std::to_string(t)), t_(t) {}

    double time() const noexcept { return t_; }

private:
    double t_;
};

/// The determinant did not change sign over the search bracket.
class NoRootInBracket : public NumericError {
public:
    using NumericError::NumericError;
};

class QuadratureNotConverged : public NumericError {
public:
    using NumericError::NumericError;
};

/// Closed form and independent quadrature disagree.
class OracleMismatch : public NumericError {
public:
    using NumericError::NumericError;
};

/// The requested quantity has no published formula (e.g. series beyond k = 3).
class Unsupported : public Error {
public:
    using Error::Error;
};

/// delta_hat == omega_m^2: the mass term of the Melnikov function vanishes.
class NeutralFrequency : public Error {
public:
    using Error::Error;
};

}  // namespace parastab
