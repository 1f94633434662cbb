#include "parastab/ode.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace parastab {

void validate(const IntegratorSettings& s) {
    if (!(s.rel_tol > 0.0) || !(s.abs_tol > 0.0)) {
        throw InvalidArgument("integrator tolerances must be > 0");
    }
    if (!(s.max_step > 0.0)) throw InvalidArgument("max_step must be > 0");
    if (s.initial_step < 0.0 || !std::isfinite(s.initial_step)) {
        throw InvalidArgument("initial_step must be finite and >= 0");
    }
}

Trajectory integrate_full(const OscillatorParams& p, const State& s0, double t_end,
                          const IntegratorSettings& settings) {
    return integrate(
        [&p](double t, const Vec2& v) { return rhs_full(p, State{t, v[0], v[1]}); }, s0, t_end,
        settings);
}

EscapeResult integrate_until_escape(const OscillatorParams& p, const State& s0, double t_max,
                                    double escape_x, const IntegratorSettings& settings) {
    if (!(escape_x > 1.0)) throw InvalidArgument("escape_x must lie beyond the saddle (> 1)");
    if (!(t_max > s0.t)) throw InvalidArgument("t_max must exceed the initial time");

    EscapeResult out;
    if (s0.x > escape_x) {
        out.escaped = true;
        out.t_exit = s0.t;
        return out;
    }

    auto rhs = [&p](double t, const Vec2& v) { return rhs_full(p, State{t, v[0], v[1]}); };
    const auto res = dopri45<double, 2>(
        rhs, s0.t, Vec2{s0.x, s0.y}, t_max, settings, [&](const HermiteSegment<double, 2>& seg) {
            if (!std::isfinite(seg.y1[0]) || !std::isfinite(seg.y1[1])) {
                throw NonFiniteState(seg.t1);
            }
            if (seg.y1[0] <= escape_x) return true;
            // x(t0) <= escape_x < x(t1): bisect the interpolant.
            double lo = seg.t0;
            double hi = seg.t1;
            for (int it = 0; it < 200; ++it) {
                const double tol = 1e-13 * std::max(1.0, std::abs(hi));
                if (hi - lo <= tol) break;
                const double mid = 0.5 * (lo + hi);
                if (seg(mid)[0] > escape_x) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.escaped = true;
            out.t_exit = hi;
            return false;
        });
    out.stats = res.stats;
    return out;
}

double reference_period(const OscillatorParams& p) {
    const double w = p.f_amp() > 0.0 ? p.omega_f() : p.omega_m();
    return 2.0 * std::numbers::pi / w;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,x,y\n";
    char buf[96];
    for (const auto& s : traj) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.t, s.x, s.y);
        os << buf;
    }
}

}  // namespace parastab
