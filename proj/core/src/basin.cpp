#include "parastab/basin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "parastab/errors.hpp"
#include "parastab/format.hpp"
#include "parastab/parallel.hpp"

namespace parastab {

std::string_view to_string(CellClass c) {
    return c == CellClass::Safe ? "Safe" : "Escaped";
}

void BasinGridSpec::validate() const {
    if (!(x_max > x_min) || !(y_max > y_min)) throw InvalidArgument("basin window is degenerate");
    if (nx < 2 || ny < 2) throw InvalidArgument("basin grid needs nx, ny >= 2");
    if (horizon_periods < 1) throw InvalidArgument("horizon_periods must be >= 1");
    if (!(escape_x > 1.0)) throw InvalidArgument("escape_x must exceed 1");
}

IntegratorSettings default_basin_settings() {
    IntegratorSettings s;
    s.rel_tol = 1e-8;
    s.abs_tol = 1e-10;
    return s;
}

std::size_t BasinRaster::safe_count() const {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), CellClass::Safe));
}

double BasinRaster::safe_area() const {
    return static_cast<double>(safe_count()) / static_cast<double>(cells.size()) *
           spec.window_area();
}

CellClass classify_initial_condition(const OscillatorParams& p, double x0, double y0,
                                     const BasinGridSpec& spec,
                                     const IntegratorSettings& settings, bool* failed) {
    if (failed) *failed = false;
    if (x0 > spec.escape_x) return CellClass::Escaped;
    const double t_max = spec.horizon_periods * reference_period(p);
    try {
        const auto r = integrate_until_escape(p, State{0.0, x0, y0}, t_max, spec.escape_x, settings);
        return r.escaped ? CellClass::Escaped : CellClass::Safe;
    } catch (const NumericError&) {
        if (failed) *failed = true;
        return CellClass::Escaped;
    }
}

BasinRaster compute_basin(const OscillatorParams& p, const BasinGridSpec& spec,
                          const IntegratorSettings& settings, unsigned workers) {
    spec.validate();
    validate(settings);
    struct Cell {
        CellClass c = CellClass::Escaped;
        bool failed = false;
    };
    const std::size_t n = spec.nx * spec.ny;
    const auto out = parallel_map(n, workers, [&](std::size_t k) {
        Cell cell;
        cell.c = classify_initial_condition(p, spec.x_at(k % spec.nx), spec.y_at(k / spec.nx),
                                            spec, settings, &cell.failed);
        return cell;
    });

    BasinRaster r;
    r.params = p.values();
    r.spec = spec;
    r.cells.reserve(n);
    for (const auto& cell : out) {
        r.cells.push_back(cell.c);
        if (cell.c == CellClass::Escaped) ++r.diagnostics.escaped;
        if (cell.failed) ++r.diagnostics.integration_failures;
    }
    return r;
}

double safe_basin_area(const OscillatorParams& p, const BasinGridSpec& spec,
                       const IntegratorSettings& settings, unsigned workers) {
    return compute_basin(p, spec, settings, workers).safe_area();
}

double baseline_safe_area(const OscillatorParams& tmpl, const BasinGridSpec& spec,
                          const IntegratorSettings& settings, unsigned workers) {
    return safe_basin_area(tmpl.with_f_amp(0.0).with_gamma(0.0), spec, settings, workers);
}

IntegrityCurve integrity_curve(const OscillatorParams& tmpl, const std::vector<double>& f_values,
                               const BasinGridSpec& spec, const IntegratorSettings& settings,
                               unsigned workers, std::optional<double> stop_below,
                               std::optional<double> baseline) {
    if (!std::is_sorted(f_values.begin(), f_values.end())) {
        throw InvalidArgument("integrity_curve needs ascending F values");
    }
    IntegrityCurve curve;
    curve.baseline_area = baseline ? *baseline : baseline_safe_area(tmpl, spec, settings, workers);
    if (!(curve.baseline_area > 0.0)) {
        throw NumericError("baseline safe basin is empty; window misses the potential well");
    }
    for (double f : f_values) {
        double norm = 1.0;
        if (f != 0.0 || tmpl.gamma() != 0.0) {
            norm = safe_basin_area(tmpl.with_f_amp(f), spec, settings, workers) /
                   curve.baseline_area;
        }
        curve.points.push_back({f, norm});
        if (stop_below && norm < *stop_below) break;
    }
    return curve;
}

std::optional<double> locate_cliff(const IntegrityCurve& curve, double level) {
    const auto& pts = curve.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].normalized_area >= level) continue;
        if (i == 0) return pts[0].f_amp;
        const auto& a = pts[i - 1];
        const auto& b = pts[i];
        const double s = (a.normalized_area - level) / (a.normalized_area - b.normalized_area);
        return a.f_amp + s * (b.f_amp - a.f_amp);
    }
    return std::nullopt;
}

void write_basin_pgm(std::ostream& os, const BasinRaster& r) {
    os << "P2\n" << r.spec.nx << ' ' << r.spec.ny << "\n255\n";
    for (std::size_t jj = r.spec.ny; jj-- > 0;) {
        for (std::size_t i = 0; i < r.spec.nx; ++i) {
            if (i) os << ' ';
            os << (r.at(i, jj) == CellClass::Safe ? 255 : 0);
        }
        os << '\n';
    }
}

void write_basin_csv(std::ostream& os, const BasinRaster& r) {
    os << "x0,y0,class\n";
    for (std::size_t j = 0; j < r.spec.ny; ++j) {
        for (std::size_t i = 0; i < r.spec.nx; ++i) {
            os << shortest(r.spec.x_at(i)) << ',' << shortest(r.spec.y_at(j)) << ','
               << to_string(r.at(i, j)) << '\n';
        }
    }
}

void write_integrity_csv(std::ostream& os, const IntegrityCurve& c) {
    os << "F,normalized_area\n";
    for (const auto& p : c.points) os << shortest(p.f_amp) << ',' << shortest(p.normalized_area) << '\n';
}

}  // namespace parastab
