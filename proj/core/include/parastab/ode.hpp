#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "parastab/errors.hpp"
#include "parastab/model.hpp"

namespace parastab {

struct IntegratorSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    /// 0 selects the starting step automatically.
    double initial_step = 0.0;

    bool operator==(const IntegratorSettings&) const = default;
};

/// Throws InvalidArgument unless tolerances are positive and steps sane.
void validate(const IntegratorSettings& s);

/// Ordered phase points with strictly increasing t.
using Trajectory = std::vector<State>;

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

/// Cubic Hermite interpolant over one accepted step.
template <typename T, std::size_t N>
struct HermiteSegment {
    using Vec = std::array<T, N>;
    T t0{}, t1{};
    Vec y0{}, y1{}, f0{}, f1{};

    Vec operator()(T t) const {
        const T h = t1 - t0;
        const T s = (t - t0) / h;
        const T s2 = s * s;
        const T s3 = s2 * s;
        const T h00 = 2 * s3 - 3 * s2 + 1;
        const T h10 = s3 - 2 * s2 + s;
        const T h01 = -2 * s3 + 3 * s2;
        const T h11 = s3 - s2;
        Vec out{};
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
        }
        return out;
    }
};

template <typename T, std::size_t N>
struct DopriResult {
    T t{};
    std::array<T, N> y{};
    IntegrationStats stats;
    bool stopped_by_observer = false;
};

namespace detail {

// Dormand-Prince 5(4) tableau (FSAL).
template <typename T>
struct DP45 {
    static constexpr T c2 = T(1) / T(5), c3 = T(3) / T(10), c4 = T(4) / T(5), c5 = T(8) / T(9);
    static constexpr T a21 = T(1) / T(5);
    static constexpr T a31 = T(3) / T(40), a32 = T(9) / T(40);
    static constexpr T a41 = T(44) / T(45), a42 = -T(56) / T(15), a43 = T(32) / T(9);
    static constexpr T a51 = T(19372) / T(6561), a52 = -T(25360) / T(2187),
                            a53 = T(64448) / T(6561), a54 = -T(212) / T(729);
    static constexpr T a61 = T(9017) / T(3168), a62 = -T(355) / T(33), a63 = T(46732) / T(5247),
                            a64 = T(49) / T(176), a65 = -T(5103) / T(18656);
    static constexpr T b1 = T(35) / T(384), b3 = T(500) / T(1113), b4 = T(125) / T(192),
                            b5 = -T(2187) / T(6784), b6 = T(11) / T(84);
    // b - b_hat
    static constexpr T e1 = T(71) / T(57600), e3 = -T(71) / T(16695), e4 = T(71) / T(1920),
                            e5 = -T(17253) / T(339200), e6 = T(22) / T(525), e7 = -T(1) / T(40);
};

template <typename T, std::size_t N>
T error_norm(const std::array<T, N>& err, const std::array<T, N>& y0,
             const std::array<T, N>& y1, T atol, T rtol) {
    using std::abs;
    T worst = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const T scale = atol + rtol * std::max(abs(y0[i]), abs(y1[i]));
        const T r = abs(err[i]) / scale;
        if (!(r <= worst)) worst = r;  // propagates NaN
    }
    return worst;
}

template <typename T, std::size_t N, typename Rhs>
T initial_step_guess(Rhs& rhs, T t0, const std::array<T, N>& y0, const std::array<T, N>& f0,
                     T direction_span, T atol, T rtol, std::size_t& evals) {
    using std::abs;
    using std::pow;
    using std::sqrt;
    T d0 = 0, d1 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const T sc = atol + rtol * abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = sqrt(d0 / N);
    d1 = sqrt(d1 / N);
    T h0 = (d0 < T(1e-5) || d1 < T(1e-5)) ? T(1e-6) : T(0.01) * d0 / d1;
    h0 = std::min(h0, direction_span);
    std::array<T, N> y1{};
    for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + h0 * f0[i];
    const auto f1 = rhs(t0 + h0, y1);
    ++evals;
    T d2 = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const T sc = atol + rtol * abs(y0[i]);
        const T r = (f1[i] - f0[i]) / sc;
        d2 += r * r;
    }
    d2 = sqrt(d2 / N) / h0;
    const T dmax = std::max(d1, d2);
    const T h1 = dmax <= T(1e-15) ? std::max(T(1e-6), h0 * T(1e-3))
                                  : pow(T(0.01) / dmax, T(1) / T(5));
    return std::min({T(100) * h0, h1, direction_span});
}

}  // namespace detail

/// Adaptive embedded Runge-Kutta 4(5) (Dormand-Prince) with PI step control.
///
/// `rhs(t, y)` returns dy/dt. `observer(segment)` is called after every
/// accepted step with the Hermite interpolant of that step; returning false
/// stops the integration. The local error of every accepted step satisfies
/// |err_i| <= abs_tol + rel_tol * max(|y_i|, |y_i_new|).
///
/// Throws StepSizeUnderflow when the controller asks for a step below the
/// round-off floor of t.
template <typename T, std::size_t N, typename Rhs, typename Observer>
DopriResult<T, N> dopri45(Rhs&& rhs, T t0, std::array<T, N> y0, T t_end,
                          const IntegratorSettings& settings, Observer&& observer) {
    using std::abs;
    using std::pow;
    using C = detail::DP45<T>;
    using Vec = std::array<T, N>;

    validate(settings);
    if (!(t_end > t0)) throw InvalidArgument("integration end time must exceed start time");

    const T rtol = static_cast<T>(settings.rel_tol);
    const T atol = static_cast<T>(settings.abs_tol);
    const T hmax = std::isfinite(settings.max_step) ? static_cast<T>(settings.max_step)
                                                    : (t_end - t0);
    constexpr T eps = std::numeric_limits<T>::epsilon();
    constexpr T safety = T(0.9);
    constexpr T fac_min = T(0.2);
    constexpr T fac_max = T(10);
    constexpr T alpha = T(0.17);  // 0.2 - 0.75 * beta
    constexpr T beta = T(0.04);

    DopriResult<T, N> res;
    IntegrationStats& st = res.stats;

    T t = t0;
    Vec y = y0;
    Vec k1 = rhs(t, y);
    ++st.rhs_evals;

    T h = settings.initial_step > 0.0
              ? static_cast<T>(settings.initial_step)
              : detail::initial_step_guess<T, N>(rhs, t, y, k1, t_end - t0, atol, rtol,
                                                 st.rhs_evals);
    h = std::min(h, hmax);

    T err_old = T(1e-4);
    bool last_rejected = false;

    Vec stage{}, k2{}, k3{}, k4{}, k5{}, k6{}, y_new{};

    while (t < t_end) {
        const T floor = T(16) * eps * std::max(abs(t), T(1));
        bool final_step = false;
        if (t + h >= t_end || t_end - (t + h) < floor) {
            h = t_end - t;
            final_step = true;
        }
        if (h < floor && !final_step) {
            throw StepSizeUnderflow(static_cast<double>(t), static_cast<double>(h));
        }

        for (std::size_t i = 0; i < N; ++i) stage[i] = y[i] + h * T(C::a21) * k1[i];
        k2 = rhs(t + T(C::c2) * h, stage);
        for (std::size_t i = 0; i < N; ++i)
            stage[i] = y[i] + h * (T(C::a31) * k1[i] + T(C::a32) * k2[i]);
        k3 = rhs(t + T(C::c3) * h, stage);
        for (std::size_t i = 0; i < N; ++i)
            stage[i] = y[i] + h * (T(C::a41) * k1[i] + T(C::a42) * k2[i] + T(C::a43) * k3[i]);
        k4 = rhs(t + T(C::c4) * h, stage);
        for (std::size_t i = 0; i < N; ++i)
            stage[i] = y[i] + h * (T(C::a51) * k1[i] + T(C::a52) * k2[i] + T(C::a53) * k3[i] +
                                   T(C::a54) * k4[i]);
        k5 = rhs(t + T(C::c5) * h, stage);
        for (std::size_t i = 0; i < N; ++i)
            stage[i] = y[i] + h * (T(C::a61) * k1[i] + T(C::a62) * k2[i] + T(C::a63) * k3[i] +
                                   T(C::a64) * k4[i] + T(C::a65) * k5[i]);
        k6 = rhs(t + h, stage);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + h * (T(C::b1) * k1[i] + T(C::b3) * k3[i] + T(C::b4) * k4[i] +
                                   T(C::b5) * k5[i] + T(C::b6) * k6[i]);
        const T t_new = final_step ? t_end : t + h;
        const Vec k7 = rhs(t_new, y_new);
        st.rhs_evals += 6;

        Vec err{};
        for (std::size_t i = 0; i < N; ++i) {
            err[i] = h * (T(C::e1) * k1[i] + T(C::e3) * k3[i] + T(C::e4) * k4[i] +
                          T(C::e5) * k5[i] + T(C::e6) * k6[i] + T(C::e7) * k7[i]);
        }
        T en = detail::error_norm<T, N>(err, y, y_new, atol, rtol);
        if (!std::isfinite(static_cast<double>(en))) en = T(1e10);

        if (en <= T(1)) {
            ++st.accepted;
            HermiteSegment<T, N> seg{t, t_new, y, y_new, k1, k7};
            t = t_new;
            y = y_new;
            k1 = k7;
            const bool keep_going = observer(static_cast<const HermiteSegment<T, N>&>(seg));

            T fac = en == T(0) ? fac_max
                               : safety * pow(en, -alpha) * pow(err_old, beta);
            fac = std::clamp(fac, fac_min, fac_max);
            if (last_rejected) fac = std::min(fac, T(1));
            err_old = std::max(en, T(1e-4));
            last_rejected = false;
            if (!keep_going) {
                res.stopped_by_observer = true;
                break;
            }
            if (!final_step) h = std::min(h * fac, hmax);
        } else {
            ++st.rejected;
            last_rejected = true;
            h *= std::max(fac_min, safety * pow(en, -alpha));
            if (h < floor) {
                throw StepSizeUnderflow(static_cast<double>(t), static_cast<double>(h));
            }
        }
    }

    res.t = t;
    res.y = y;
    return res;
}

/// Integrates a planar system and returns every accepted step.
/// `rhs(t, v)` returns the derivative as Vec2.
template <typename Rhs>
Trajectory integrate(Rhs&& rhs, const State& s0, double t_end, const IntegratorSettings& settings) {
    Trajectory traj{s0};
    auto wrapped = [&rhs](double t, const Vec2& v) { return rhs(t, v); };
    dopri45<double, 2>(wrapped, s0.t, Vec2{s0.x, s0.y}, t_end, settings,
                       [&traj](const HermiteSegment<double, 2>& seg) {
                           traj.push_back({seg.t1, seg.y1[0], seg.y1[1]});
                           return true;
                       });
    return traj;
}

/// Integrates and samples the dense output on t0, t0 + dt, ..., t_end.
template <typename Rhs>
Trajectory integrate_sampled(Rhs&& rhs, const State& s0, double t_end, double dt,
                             const IntegratorSettings& settings) {
    if (!(dt > 0.0)) throw InvalidArgument("sample interval must be > 0");
    Trajectory traj{s0};
    std::size_t next = 1;
    const double t0 = s0.t;
    auto wrapped = [&rhs](double t, const Vec2& v) { return rhs(t, v); };
    const auto end = dopri45<double, 2>(wrapped, t0, Vec2{s0.x, s0.y}, t_end, settings,
                                        [&](const HermiteSegment<double, 2>& seg) {
                           for (;;) {
                               const double ts = t0 + static_cast<double>(next) * dt;
                               if (ts > seg.t1 || ts > t_end) break;
                               const auto v = seg(ts);
                               traj.push_back({ts, v[0], v[1]});
                               ++next;
                           }
                           return true;
                       });
    if (traj.back().t < t_end) traj.push_back({t_end, end.y[0], end.y[1]});
    return traj;
}

/// Full-model trajectory in physical time.
Trajectory integrate_full(const OscillatorParams& p, const State& s0, double t_end,
                          const IntegratorSettings& settings);

struct EscapeResult {
    bool escaped = false;
    std::optional<double> t_exit;
    IntegrationStats stats;
};

/// Integrates the full model until x exceeds `escape_x` or t reaches t_max.
/// The exit time is located by bisection on the Hermite interpolant of the
/// crossing step. Requires escape_x > 1 and t_max > s0.t.
EscapeResult integrate_until_escape(const OscillatorParams& p, const State& s0, double t_max,
                                    double escape_x, const IntegratorSettings& settings);

/// Default escape threshold.
inline constexpr double kDefaultEscapeX = 10.0;

/// Period used for escape horizons: forcing period, or mass period when F = 0.
double reference_period(const OscillatorParams& p);

/// CSV with header `t,x,y`, 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace parastab
