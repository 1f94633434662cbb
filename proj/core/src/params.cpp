#include "parastab/params.hpp"

#include <cmath>

#include "parastab/errors.hpp"

namespace parastab {

std::string validation_error(const ParamValues& v) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(v.delta_hat) || !finite(v.gamma) || !finite(v.beta) ||
        !finite(v.omega_m) || !finite(v.f_amp) || !finite(v.omega_f)) {
        return "all parameters must be finite";
    }
    if (!(v.delta_hat > 0.0)) return "delta_hat must be > 0";
    if (v.gamma < 0.0) return "gamma must be >= 0";
    if (v.beta < 0.0) return "beta must be >= 0";
    if (v.f_amp < 0.0) return "f_amp must be >= 0";
    if (!(v.omega_m > 0.0)) return "omega_m must be > 0";
    if (!(v.omega_f > 0.0)) return "omega_f must be > 0";
    if (!(v.gamma * v.delta_hat < 1.0)) {
        return "gamma * delta_hat must be < 1 (mass must stay positive)";
    }
    return {};
}

OscillatorParams::OscillatorParams(const ParamValues& values) : v_(values) {
    if (auto msg = validation_error(v_); !msg.empty()) {
        throw InvalidArgument("invalid oscillator parameters: " + msg);
    }
}

namespace {
OscillatorParams modified(ParamValues v, double ParamValues::*field, double x) {
    v.*field = x;
    return OscillatorParams(v);
}
}  // namespace

OscillatorParams OscillatorParams::with_delta_hat(double v) const {
    return modified(v_, &ParamValues::delta_hat, v);
}
OscillatorParams OscillatorParams::with_gamma(double v) const {
    return modified(v_, &ParamValues::gamma, v);
}
OscillatorParams OscillatorParams::with_beta(double v) const {
    return modified(v_, &ParamValues::beta, v);
}
OscillatorParams OscillatorParams::with_omega_m(double v) const {
    return modified(v_, &ParamValues::omega_m, v);
}
OscillatorParams OscillatorParams::with_f_amp(double v) const {
    return modified(v_, &ParamValues::f_amp, v);
}
OscillatorParams OscillatorParams::with_omega_f(double v) const {
    return modified(v_, &ParamValues::omega_f, v);
}

}  // namespace parastab
