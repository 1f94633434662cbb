#pragma once

#include <string>

namespace parastab {

/// Raw parameter values. Use with designated initializers:
/// `OscillatorParams({.delta_hat = 0.25, .gamma = 0.1})`.
struct ParamValues {
    double delta_hat = 1.0;  ///< inverse mean mass
    double gamma = 0.0;      ///< mass-variation amplitude
    double beta = 0.0;       ///< linear damping
    double omega_m = 1.0;    ///< mass-variation frequency [rad / time]
    double f_amp = 0.0;      ///< forcing amplitude
    double omega_f = 1.0;    ///< forcing frequency [rad / time]

    bool operator==(const ParamValues&) const = default;
};

/// Validated parameter set of the Helmholtz oscillator with periodic mass
///   m(t) = 1/delta_hat + gamma sin(omega_m t).
///
/// Construction enforces delta_hat > 0, gamma >= 0, beta >= 0, f_amp >= 0,
/// omega_m > 0, omega_f > 0 and gamma * delta_hat < 1 (the mass never
/// vanishes). Invalid values throw InvalidArgument.
class OscillatorParams {
public:
    OscillatorParams() : OscillatorParams(ParamValues{}) {}
    explicit OscillatorParams(const ParamValues& values);

    double delta_hat() const noexcept { return v_.delta_hat; }
    double gamma() const noexcept { return v_.gamma; }
    double beta() const noexcept { return v_.beta; }
    double omega_m() const noexcept { return v_.omega_m; }
    double f_amp() const noexcept { return v_.f_amp; }
    double omega_f() const noexcept { return v_.omega_f; }

    const ParamValues& values() const noexcept { return v_; }

    OscillatorParams with_delta_hat(double v) const;
    OscillatorParams with_gamma(double v) const;
    OscillatorParams with_beta(double v) const;
    OscillatorParams with_omega_m(double v) const;
    OscillatorParams with_f_amp(double v) const;
    OscillatorParams with_omega_f(double v) const;

    bool operator==(const OscillatorParams&) const = default;

private:
    ParamValues v_;
};

/// Returns an empty string when `v` is valid, otherwise the first violation.
std::string validation_error(const ParamValues& v);

}  // namespace parastab
