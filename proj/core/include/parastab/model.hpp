#pragma once

#include <array>
#include <cmath>

#include "parastab/params.hpp"

namespace parastab {

using Vec2 = std::array<double, 2>;

/// Phase point (t, x, y) with y = dx/dt.
struct State {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;

    bool operator==(const State&) const = default;
};

enum class FixedPoint { Origin, Saddle };

/// m(t) = 1/delta_hat + gamma sin(omega_m t), physical time.
inline double mass(const OscillatorParams& p, double t) {
    return 1.0 / p.delta_hat() + p.gamma() * std::sin(p.omega_m() * t);
}

/// Full nonlinear vector field in physical time:
///   x' = y
///   y' = [-dh (x - x^2) - dh (beta + gamma wm cos wm t) y + dh F sin wf t]
///        / (1 + gamma dh sin wm t)
inline Vec2 rhs_full(const OscillatorParams& p, const State& s) {
    const double dh = p.delta_hat();
    const double g = p.gamma();
    double denom = 1.0;
    double mdot = 0.0;
    if (g != 0.0) {
        const double ph = p.omega_m() * s.t;
        denom += g * dh * std::sin(ph);
        mdot = g * p.omega_m() * std::cos(ph);
    }
    double accel = -dh * (s.x - s.x * s.x) - dh * (p.beta() + mdot) * s.y;
    if (p.f_amp() != 0.0) accel += dh * p.f_amp() * std::sin(p.omega_f() * s.t);
    return {s.y, accel / denom};
}

/// Entries (a11, a12, a21, a22) of the periodic Jacobian at a fixed point
/// with F = 0. Clock: scaled time tau = omega_m t, coefficient period 2 pi.
template <typename T>
std::array<T, 4> linearized_matrix(const OscillatorParams& p, FixedPoint fp, T tau) {
    using std::cos;
    using std::sin;
    const T dh = static_cast<T>(p.delta_hat());
    const T g = static_cast<T>(p.gamma());
    const T wm = static_cast<T>(p.omega_m());
    const T denom = T(1) + g * dh * sin(tau);
    const T stiffness = dh / (wm * wm) / denom;
    const T damping = -dh * (static_cast<T>(p.beta()) / wm + g * cos(tau)) / denom;
    const T a21 = fp == FixedPoint::Origin ? -stiffness : stiffness;
    return {T(0), T(1), a21, damping};
}

/// Linearization about (0, 0) applied to v, scaled time (period 2 pi).
inline Vec2 rhs_linearized_origin(const OscillatorParams& p, double tau, const Vec2& v) {
    const auto a = linearized_matrix<double>(p, FixedPoint::Origin, tau);
    return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
}

/// Linearization about the saddle (1, 0) applied to v, scaled time (period 2 pi).
inline Vec2 rhs_linearized_saddle(const OscillatorParams& p, double tau, const Vec2& v) {
    const auto a = linearized_matrix<double>(p, FixedPoint::Saddle, tau);
    return {a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]};
}

/// Energy y^2/2 + x^2/2 - x^3/3 of the unforced, undamped, delta_hat = 1 system.
/// The saddle level is 1/6.
inline double helmholtz_energy(double x, double y) {
    return 0.5 * y * y + 0.5 * x * x - x * x * x / 3.0;
}

}  // namespace parastab
