#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "parastab/model.hpp"
#include "parastab/ode.hpp"

namespace parastab {

enum class Stability { Stable, Unstable, Marginal };

std::string_view to_string(Stability s);

/// Default classification band around the unit circle.
inline constexpr double kDefaultStabilityMargin = 1e-8;

/// Fundamental matrix of the linearization over one scaled period (2 pi).
struct MonodromyResult {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    double trace = 2;
    double det = 1;
    std::array<std::complex<double>, 2> multipliers{};
    Stability classification = Stability::Marginal;

    double max_abs_multiplier() const;
};

/// Eigenvalues of a 2x2 matrix from its trace and determinant. Real pairs
/// use the cancellation-free form lambda1 = (tr + sign(tr) sqrt(disc)) / 2,
/// lambda2 = det / lambda1.
std::array<std::complex<double>, 2> multipliers_from(long double trace, long double det);

Stability classify(const MonodromyResult& r, double margin = kDefaultStabilityMargin);

/// Tight settings suitable for locating transition curves.
IntegratorSettings default_floquet_settings();

/// Integrates V' = A(tau) V, V(0) = I over tau in [0, 2 pi] (scaled time)
/// for the chosen fixed point, in extended precision.
MonodromyResult monodromy(const OscillatorParams& p, FixedPoint fp,
                          const IntegratorSettings& settings = default_floquet_settings(),
                          double margin = kDefaultStabilityMargin);

inline MonodromyResult monodromy_origin(
    const OscillatorParams& p, const IntegratorSettings& settings = default_floquet_settings()) {
    return monodromy(p, FixedPoint::Origin, settings);
}

inline MonodromyResult monodromy_saddle(
    const OscillatorParams& p, const IntegratorSettings& settings = default_floquet_settings()) {
    return monodromy(p, FixedPoint::Saddle, settings);
}

/// Closed-form det of the monodromy (Liouville):
///   exp(-beta dh 2 pi / (omega_m sqrt(1 - gamma^2 dh^2))).
double liouville_determinant(const OscillatorParams& p);

struct FloquetMapRow {
    double gamma;
    double delta_hat;
    double max_abs_multiplier;
    Stability classification;
};

/// Origin stability over the Cartesian product gamma_values x delta_values
/// (gamma-major order). Cells violating gamma * delta_hat < 1 are skipped.
std::vector<FloquetMapRow> floquet_map(const OscillatorParams& base,
                                       const std::vector<double>& gamma_values,
                                       const std::vector<double>& delta_values,
                                       const IntegratorSettings& settings, unsigned workers);

/// CSV `gamma,delta_hat,max_abs_multiplier,class`.
void write_floquet_map_csv(std::ostream& os, const std::vector<FloquetMapRow>& rows);

}  // namespace parastab
