#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "parastab/model.hpp"

namespace parastab {

/// Unperturbed orbit homoclinic to the saddle (1, 0):
///   x_h(t) = 1 - 3 / (1 + cosh(sqrt(dh) t)),  y_h = dx_h/dt.
/// x_h(0) = -1/2, y_h is odd, both tend to the saddle as |t| -> inf.
struct HomoclinicOrbit {
    double delta_hat = 1.0;

    /// (x_h, y_h) at time t, evaluated without overflow for any |t|.
    Vec2 point(double t) const;
    /// 1 - x_h(t), accurate when x_h is close to 1.
    double gap_to_saddle(double t) const;
};

inline Vec2 homoclinic_point(double delta_hat, double t) {
    return HomoclinicOrbit{delta_hat}.point(t);
}

/// Closed-form Melnikov function split into its three addends.
struct MelnikovEvaluation {
    double t0 = 0;
    double value = 0;
    double forcing_term = 0;
    double damping_term = 0;
    double mass_term = 0;
};

/// M(t0) = 6 F wf^2 pi cos(wf t0) / sinh(pi wf / sqrt(dh))
///         - (6/5) dh^(3/2) beta
///         - gamma (3/5) (pi wm^2 / dh) cos(wm t0) / sinh(pi wm / sqrt(dh)) (dh^2 - wm^4)
MelnikovEvaluation melnikov_closed(const OscillatorParams& p, double t0);

/// Integrand of the Melnikov integral at time t along the homoclinic orbit.
double melnikov_integrand(const OscillatorParams& p, double t0, double t);

/// Default symmetric window 40 / sqrt(dh); the integrand tail there is below 1e-14.
double default_quadrature_window(double delta_hat);

/// Adaptive Gauss-Kronrod quadrature of the Melnikov integral over
/// [-window, window]. `tol` is relative to the L1 norm of the integrand.
/// Throws QuadratureNotConverged if the error estimate stays above tol or
/// the integrand has not decayed at the window edges.
double melnikov_quadrature(const OscillatorParams& p, double t0,
                           std::optional<double> window = std::nullopt, double tol = 1e-10);

/// Coefficients of M(t0) = F A cos(wf t0) - C cos(wm t0) - D.
struct MelnikovCoefficients {
    double forcing_per_unit_f = 0;  ///< A
    double damping = 0;             ///< D >= 0
    double mass = 0;                ///< C (signed; sign of dh^2 - wm^4)
};

MelnikovCoefficients melnikov_coefficients(const OscillatorParams& p);

/// Only low-order resonances p/q (q <= 4) are treated as phase-locked;
/// higher-order ratios use the independent-phase supremum.
inline constexpr std::int64_t kMaxCommensurateDenominator = 4;

/// p/q with q <= max_denominator when |ratio - p/q| <= 1e-12 ratio.
std::optional<std::pair<std::int64_t, std::int64_t>> commensurate_ratio(
    double ratio, std::int64_t max_denominator = kMaxCommensurateDenominator);

struct MelnikovSupremum {
    double value = 0;
    double t0 = 0;  ///< maximizing phase (commensurate case only; 0 otherwise)
    bool commensurate = false;
};

/// sup over t0 of melnikov_closed. For wf / wm commensurate (denominator
/// <= kMaxCommensurateDenominator) the supremum is found by a scan over the common period refined by
/// Newton steps; otherwise cos(wf t0) and cos(wm t0) are taken as
/// independently extremal.
MelnikovSupremum melnikov_supremum(const OscillatorParams& p);

/// Smallest F >= 0 at which sup_t0 M(t0) reaches 0; the supplied F is
/// ignored. Returns 0 when the mass variation alone already yields a zero.
/// With quadrature_check the closed form is cross-checked against
/// melnikov_quadrature at the threshold (OracleMismatch on disagreement).
/// Requires beta > 0 or gamma > 0.
double forcing_threshold(const OscillatorParams& p, bool quadrature_check = false);

/// gamma at which mass variation alone balances damping (F = 0):
///   2 dh^(5/2) beta sinh(wm pi / sqrt(dh)) / (wm^2 pi |wm^4 - dh^2|).
/// Throws NeutralFrequency when dh = wm^2.
double gamma_threshold(double delta_hat, double beta, double omega_m);

enum class ErosionShift { Delay, Advance, Neutral };

std::string_view to_string(ErosionShift s);

/// Delay if dh^2 > wm^4, Advance if dh^2 < wm^4, Neutral if equal.
ErosionShift erosion_shift_sign(double delta_hat, double omega_m);

struct ThresholdRow {
    double gamma;
    double omega_f;
    double f_threshold;
};

/// forcing_threshold over gammas x omega_fs (gamma-major order).
std::vector<ThresholdRow> threshold_table(const OscillatorParams& base,
                                          const std::vector<double>& gammas,
                                          const std::vector<double>& omega_fs);

/// CSV `gamma,omega_f,f_threshold`.
void write_thresholds_csv(std::ostream& os, const std::vector<ThresholdRow>& rows);

}  // namespace parastab
