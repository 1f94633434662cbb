#include "parastab/melnikov.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <ostream>

#include "parastab/errors.hpp"
#include "parastab/format.hpp"

namespace parastab {

namespace {
constexpr double kPi = std::numbers::pi;
}

Vec2 HomoclinicOrbit::point(double t) const {
    // With z = sqrt(dh) t and u = exp(-|z|):
    //   3 / (1 + cosh z)            = 6u / (1 + u)^2
    //   sinh z / (1 + cosh z)^2     = sign(z) 2u (1 - u) / (1 + u)^3
    const double s = std::sqrt(delta_hat);
    const double z = s * t;
    const double u = std::exp(-std::abs(z));
    const double opu = 1.0 + u;
    const double x = 1.0 - 6.0 * u / (opu * opu);
    const double y = std::copysign(6.0 * s * u * (1.0 - u) / (opu * opu * opu), z);
    return {x, z == 0.0 ? 0.0 : y};
}

double HomoclinicOrbit::gap_to_saddle(double t) const {
    const double u = std::exp(-std::abs(std::sqrt(delta_hat) * t));
    return 6.0 * u / ((1.0 + u) * (1.0 + u));
}

MelnikovCoefficients melnikov_coefficients(const OscillatorParams& p) {
    const double dh = p.delta_hat();
    const double s = std::sqrt(dh);
    const double wf = p.omega_f();
    const double wm = p.omega_m();
    MelnikovCoefficients c;
    c.forcing_per_unit_f = 6.0 * wf * wf * kPi / std::sinh(kPi * wf / s);
    c.damping = 1.2 * dh * s * p.beta();
    c.mass = p.gamma() * 0.6 * (kPi * wm * wm / dh) / std::sinh(kPi * wm / s) *
             (dh * dh - wm * wm * wm * wm);
    return c;
}

MelnikovEvaluation melnikov_closed(const OscillatorParams& p, double t0) {
    const auto c = melnikov_coefficients(p);
    MelnikovEvaluation e;
    e.t0 = t0;
    e.forcing_term = p.f_amp() * c.forcing_per_unit_f * std::cos(p.omega_f() * t0);
    e.damping_term = -c.damping;
    e.mass_term = -c.mass * std::cos(p.omega_m() * t0);
    e.value = e.forcing_term + e.damping_term + e.mass_term;
    return e;
}

double melnikov_integrand(const OscillatorParams& p, double t0, double t) {
    const HomoclinicOrbit orbit{p.delta_hat()};
    const auto [x, y] = orbit.point(t);
    const double one_minus_x = orbit.gap_to_saddle(t);
    const double dh = p.delta_hat();
    const double wm = p.omega_m();
    const double ph_m = wm * (t + t0);
    double v = -dh * p.beta() * y * y;
    if (p.f_amp() != 0.0) v += p.f_amp() * dh * std::sin(p.omega_f() * (t + t0)) * y;
    if (p.gamma() != 0.0) {
        v += -dh * p.gamma() * wm * std::cos(ph_m) * y * y +
             p.gamma() * dh * dh * std::sin(ph_m) * x * one_minus_x * y;
    }
    return v;
}

double default_quadrature_window(double delta_hat) { return 40.0 / std::sqrt(delta_hat); }

double melnikov_quadrature(const OscillatorParams& p, double t0, std::optional<double> window,
                           double tol) {
    const double w = window.value_or(default_quadrature_window(p.delta_hat()));
    if (!(w > 0.0) || !(tol > 0.0)) throw InvalidArgument("quadrature window and tol must be > 0");

    auto f = [&](double t) { return melnikov_integrand(p, t0, t); };
    using boost::math::quadrature::gauss_kronrod;
    constexpr unsigned max_depth = 20;
    double total = 0.0, l1 = 0.0, err = 0.0;
    for (auto [a, b] : {std::pair{-w, 0.0}, std::pair{0.0, w}}) {
        double e = 0.0, n1 = 0.0;
        total += gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &e, &n1);
        err += e;
        l1 += n1;
    }
    if (err > tol * l1 && err > 1e-15) {
        throw QuadratureNotConverged("Melnikov quadrature error estimate " + shortest(err) +
                                     " exceeds tolerance");
    }
    // The truncated tails are bounded by the edge values times the decay length.
    const double tail = (std::abs(f(-w)) + std::abs(f(w))) / std::sqrt(p.delta_hat());
    if (tail > tol * std::max(l1, 1.0)) {
        throw QuadratureNotConverged("Melnikov quadrature window " + shortest(w) +
                                     " too short: integrand has not decayed");
    }
    return total;
}

std::optional<std::pair<std::int64_t, std::int64_t>> commensurate_ratio(
    double ratio, std::int64_t max_denominator) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) return std::nullopt;
    // Continued-fraction convergents h/k.
    std::int64_t h_prev = 1, h = 0, k_prev = 0, k = 1;
    double x = ratio;
    for (int it = 0; it < 64; ++it) {
        const double a_d = std::floor(x);
        if (a_d > 1e15) break;
        const auto a = static_cast<std::int64_t>(a_d);
        const std::int64_t h_next = a * h_prev + h;
        const std::int64_t k_next = a * k_prev + k;
        // shift: (h, h_prev) <- (h_prev, h_next)
        h = h_prev;
        h_prev = h_next;
        k = k_prev;
        k_prev = k_next;
        if (k_prev > max_denominator) break;
        const double approx = static_cast<double>(h_prev) / static_cast<double>(k_prev);
        if (std::abs(approx - ratio) <= 1e-12 * ratio) return std::pair{h_prev, k_prev};
        const double frac = x - a_d;
        if (frac <= 0.0) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

namespace {

// sup over phi of a cos(p phi) - c cos(q phi), with the maximizing phi.
std::pair<double, double> sup_two_cosines(double a, double c, std::int64_t p, std::int64_t q) {
    const double pd = static_cast<double>(p);
    const double qd = static_cast<double>(q);
    auto g = [&](double phi) { return a * std::cos(pd * phi) - c * std::cos(qd * phi); };
    const std::int64_t samples = 64 * std::max(p, q) + 64;
    double best_phi = 0.0;
    double best = g(0.0);
    for (std::int64_t i = 1; i < samples; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(samples);
        const double v = g(phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    // Newton on g'(phi) = 0.
    double phi = best_phi;
    for (int it = 0; it < 30; ++it) {
        const double d1 = -a * pd * std::sin(pd * phi) + c * qd * std::sin(qd * phi);
        const double d2 = -a * pd * pd * std::cos(pd * phi) + c * qd * qd * std::cos(qd * phi);
        if (!(d2 < 0.0)) break;
        const double next = phi - d1 / d2;
        const double v = g(next);
        if (!(v >= best)) break;
        const bool done = std::abs(next - phi) < 1e-15;
        best = v;
        best_phi = next;
        phi = next;
        if (done) break;
    }
    return {best, best_phi};
}

}  // namespace

MelnikovSupremum melnikov_supremum(const OscillatorParams& p) {
    const auto c = melnikov_coefficients(p);
    const double a = p.f_amp() * c.forcing_per_unit_f;
    MelnikovSupremum out;
    if (a == 0.0 || c.mass == 0.0) {
        out.value = a + std::abs(c.mass) - c.damping;
        out.t0 = (a == 0.0 && c.mass > 0.0) ? kPi / p.omega_m() : 0.0;
        return out;
    }
    const auto pq = commensurate_ratio(p.omega_f() / p.omega_m());
    if (!pq) {
        out.value = a + std::abs(c.mass) - c.damping;
        return out;
    }
    const auto [num, den] = *pq;
    const auto [best, phi] = sup_two_cosines(a, c.mass, num, den);
    out.value = best - c.damping;
    out.t0 = static_cast<double>(den) * phi / p.omega_m();
    out.commensurate = true;
    return out;
}

double forcing_threshold(const OscillatorParams& p, bool quadrature_check) {
    if (!(p.beta() > 0.0) && !(p.gamma() > 0.0)) {
        throw InvalidArgument("forcing_threshold needs beta > 0 or gamma > 0");
    }
    const auto c = melnikov_coefficients(p);
    const double A = c.forcing_per_unit_f;
    const double D = c.damping;
    const double absC = std::abs(c.mass);

    if (absC >= D) return 0.0;  // mass variation alone produces a zero

    const auto pq = commensurate_ratio(p.omega_f() / p.omega_m());
    double f_star = 0.0;
    if (!pq || c.mass == 0.0) {
        f_star = (D - absC) / A;
    } else {
        auto h = [&](double f) {
            return sup_two_cosines(f * A, c.mass, pq->first, pq->second).first - D;
        };
        // h is convex and increasing through its root; h(0) < 0 <= h(hi).
        double lo = 0.0;
        double hi = (D + absC) / A;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (h(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        f_star = hi;
    }

    if (quadrature_check) {
        const OscillatorParams at = p.with_f_amp(f_star);
        const auto sup = melnikov_supremum(at);
        const double closed = melnikov_closed(at, sup.t0).value;
        const double quad = melnikov_quadrature(at, sup.t0);
        if (std::abs(closed - quad) > 1e-6 * (1.0 + std::abs(closed))) {
            throw OracleMismatch("closed-form Melnikov " + shortest(closed) +
                                 " disagrees with quadrature " + shortest(quad));
        }
    }
    return f_star;
}

double gamma_threshold(double delta_hat, double beta, double omega_m) {
    if (!(delta_hat > 0.0) || !(omega_m > 0.0) || !(beta > 0.0)) {
        throw InvalidArgument("gamma_threshold needs delta_hat, omega_m, beta > 0");
    }
    const double w4 = omega_m * omega_m * omega_m * omega_m;
    const double gap = std::abs(w4 - delta_hat * delta_hat);
    if (gap <= 1e-12 * std::max(w4, delta_hat * delta_hat)) {
        throw NeutralFrequency("delta_hat = omega_m^2: the mass term of the Melnikov function "
                               "vanishes, no finite gamma threshold");
    }
    const double s = std::sqrt(delta_hat);
    return 2.0 * delta_hat * delta_hat * s * beta * std::sinh(omega_m * kPi / s) /
           (omega_m * omega_m * kPi * gap);
}

std::string_view to_string(ErosionShift s) {
    switch (s) {
        case ErosionShift::Delay: return "Delay";
        case ErosionShift::Advance: return "Advance";
        case ErosionShift::Neutral: return "Neutral";
    }
    return "?";
}

ErosionShift erosion_shift_sign(double delta_hat, double omega_m) {
    if (!(delta_hat > 0.0) || !(omega_m > 0.0)) {
        throw InvalidArgument("erosion_shift_sign needs positive inputs");
    }
    const double w2 = omega_m * omega_m;
    const double diff = delta_hat * delta_hat - w2 * w2;
    if (diff > 0.0) return ErosionShift::Delay;
    if (diff < 0.0) return ErosionShift::Advance;
    return ErosionShift::Neutral;
}

std::vector<ThresholdRow> threshold_table(const OscillatorParams& base,
                                          const std::vector<double>& gammas,
                                          const std::vector<double>& omega_fs) {
    std::vector<ThresholdRow> rows;
    rows.reserve(gammas.size() * omega_fs.size());
    for (double g : gammas) {
        for (double wf : omega_fs) {
            const auto p = base.with_gamma(g).with_omega_f(wf);
            rows.push_back({g, wf, forcing_threshold(p)});
        }
    }
    return rows;
}

void write_thresholds_csv(std::ostream& os, const std::vector<ThresholdRow>& rows) {
    os << "gamma,omega_f,f_threshold\n";
    for (const auto& r : rows) {
        os << shortest(r.gamma) << ',' << shortest(r.omega_f) << ',' << shortest(r.f_threshold)
           << '\n';
    }
}

}  // namespace parastab
