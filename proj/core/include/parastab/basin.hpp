#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "parastab/ode.hpp"
#include "parastab/params.hpp"

namespace parastab {

enum class CellClass : std::uint8_t { Safe, Escaped };

std::string_view to_string(CellClass c);

/// Rectangular window of initial conditions sampled at cell centres.
struct BasinGridSpec {
    double x_min = -1.0, x_max = 2.0;
    double y_min = -1.5, y_max = 1.5;
    std::size_t nx = 301, ny = 301;
    int horizon_periods = 32;
    double escape_x = kDefaultEscapeX;

    /// Throws InvalidArgument on degenerate ranges, nx or ny < 2,
    /// horizon_periods < 1 or escape_x <= 1.
    void validate() const;

    double x_at(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
    double y_at(std::size_t j) const { return y_min + (static_cast<double>(j) + 0.5) * dy(); }
    double dx() const { return (x_max - x_min) / static_cast<double>(nx); }
    double dy() const { return (y_max - y_min) / static_cast<double>(ny); }
    double window_area() const { return (x_max - x_min) * (y_max - y_min); }
};

/// Tolerances used for basin sweeps (looser than the library default).
IntegratorSettings default_basin_settings();

struct BasinDiagnostics {
    std::size_t escaped = 0;
    std::size_t integration_failures = 0;  ///< counted as Escaped as well
};

struct BasinRaster {
    ParamValues params;
    BasinGridSpec spec;
    /// Row-major, row j (y) outer, column i (x) inner; row 0 is y_min.
    std::vector<CellClass> cells;
    BasinDiagnostics diagnostics;

    CellClass at(std::size_t i, std::size_t j) const { return cells[j * spec.nx + i]; }
    std::size_t safe_count() const;
    /// safe cells / total cells x window area.
    double safe_area() const;
};

/// Escaped iff the full model leaves x < escape_x within horizon_periods
/// reference periods. When `failed` is given it is set on integration
/// failure (the cell is then reported Escaped).
CellClass classify_initial_condition(const OscillatorParams& p, double x0, double y0,
                                     const BasinGridSpec& spec,
                                     const IntegratorSettings& settings,
                                     bool* failed = nullptr);

BasinRaster compute_basin(const OscillatorParams& p, const BasinGridSpec& spec,
                          const IntegratorSettings& settings, unsigned workers = 0);

double safe_basin_area(const OscillatorParams& p, const BasinGridSpec& spec,
                       const IntegratorSettings& settings, unsigned workers = 0);

struct IntegrityPoint {
    double f_amp;
    double normalized_area;
};

struct IntegrityCurve {
    std::vector<IntegrityPoint> points;
    double baseline_area = 0;  ///< absolute safe area at F = gamma = 0
};

/// Normalized safe area over ascending f_values. The baseline is the same
/// template with F = gamma = 0. Points with F = 0 and gamma = 0 reuse the
/// baseline and so equal 1 exactly. When stop_below is set, the sweep ends
/// after the first point whose normalized area falls below it. A known
/// baseline (from baseline_safe_area with the same spec) may be passed in.
IntegrityCurve integrity_curve(const OscillatorParams& tmpl, const std::vector<double>& f_values,
                               const BasinGridSpec& spec, const IntegratorSettings& settings,
                               unsigned workers = 0, std::optional<double> stop_below = {},
                               std::optional<double> baseline = {});

/// Safe area of tmpl with F = gamma = 0.
double baseline_safe_area(const OscillatorParams& tmpl, const BasinGridSpec& spec,
                          const IntegratorSettings& settings, unsigned workers = 0);

inline constexpr double kCliffLevel = 0.5;

/// First F at which the normalized area drops below `level`, linearly
/// interpolated between the bracketing samples. Empty if it never does.
std::optional<double> locate_cliff(const IntegrityCurve& curve, double level = kCliffLevel);

/// P2 graymap, 0 = escaped, 255 = safe, top row = y_max.
void write_basin_pgm(std::ostream& os, const BasinRaster& r);
/// CSV `x0,y0,class` in raster order.
void write_basin_csv(std::ostream& os, const BasinRaster& r);
/// CSV `F,normalized_area`.
void write_integrity_csv(std::ostream& os, const IntegrityCurve& c);

}  // namespace parastab
