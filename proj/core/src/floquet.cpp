#include "parastab/floquet.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "parastab/format.hpp"
#include "parastab/parallel.hpp"

namespace parastab {

std::string_view to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Unstable: return "Unstable";
        case Stability::Marginal: return "Marginal";
    }
    return "?";
}

double MonodromyResult::max_abs_multiplier() const {
    return std::max(std::abs(multipliers[0]), std::abs(multipliers[1]));
}

std::array<std::complex<double>, 2> multipliers_from(long double trace, long double det) {
    const long double disc = trace * trace - 4.0L * det;
    if (disc >= 0.0L) {
        const long double root = std::sqrt(disc);
        const long double l1 = 0.5L * (trace + std::copysign(root, trace));
        const long double l2 = l1 != 0.0L ? det / l1 : 0.0L;
        return {std::complex<double>(static_cast<double>(l1), 0.0),
                std::complex<double>(static_cast<double>(l2), 0.0)};
    }
    const long double re = 0.5L * trace;
    const long double im = 0.5L * std::sqrt(-disc);
    return {std::complex<double>(static_cast<double>(re), static_cast<double>(im)),
            std::complex<double>(static_cast<double>(re), static_cast<double>(-im))};
}

Stability classify(const MonodromyResult& r, double margin) {
    if (margin < 0.0) throw InvalidArgument("classification margin must be >= 0");
    const double m = r.max_abs_multiplier();
    if (m > 1.0 + margin) return Stability::Unstable;
    if (m < 1.0 - margin) return Stability::Stable;
    return Stability::Marginal;
}

IntegratorSettings default_floquet_settings() {
    IntegratorSettings s;
    s.rel_tol = 1e-15;
    s.abs_tol = 1e-17;
    return s;
}

MonodromyResult monodromy(const OscillatorParams& p, FixedPoint fp,
                          const IntegratorSettings& settings, double margin) {
    using L = long double;
    using Vec4 = std::array<L, 4>;  // columns (v11, v21) and (v12, v22)

    auto rhs = [&p, fp](L tau, const Vec4& v) {
        const auto a = linearized_matrix<L>(p, fp, tau);
        return Vec4{a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1],
                    a[0] * v[2] + a[1] * v[3], a[2] * v[2] + a[3] * v[3]};
    };
    const L period = 2.0L * std::numbers::pi_v<L>;
    const auto res = dopri45<L, 4>(rhs, L(0), Vec4{1, 0, 0, 1}, period, settings,
                                   [](const HermiteSegment<L, 4>& seg) {
                                       for (L x : seg.y1) {
                                           if (!std::isfinite(x)) throw NonFiniteState(
                                               static_cast<double>(seg.t1));
                                       }
                                       return true;
                                   });

    const L m11 = res.y[0], m21 = res.y[1], m12 = res.y[2], m22 = res.y[3];
    const L trace = m11 + m22;
    const L det = m11 * m22 - m12 * m21;

    MonodromyResult out;
    out.m11 = static_cast<double>(m11);
    out.m12 = static_cast<double>(m12);
    out.m21 = static_cast<double>(m21);
    out.m22 = static_cast<double>(m22);
    out.trace = static_cast<double>(trace);
    out.det = static_cast<double>(det);
    out.multipliers = multipliers_from(trace, det);
    out.classification = classify(out, margin);
    return out;
}

double liouville_determinant(const OscillatorParams& p) {
    const double a = p.gamma() * p.delta_hat();
    return std::exp(-p.beta() * p.delta_hat() * 2.0 * std::numbers::pi /
                    (p.omega_m() * std::sqrt(1.0 - a * a)));
}

std::vector<FloquetMapRow> floquet_map(const OscillatorParams& base,
                                       const std::vector<double>& gamma_values,
                                       const std::vector<double>& delta_values,
                                       const IntegratorSettings& settings, unsigned workers) {
    std::vector<ParamValues> cells;
    cells.reserve(gamma_values.size() * delta_values.size());
    for (double g : gamma_values) {
        for (double d : delta_values) {
            ParamValues v = base.values();
            v.gamma = g;
            v.delta_hat = d;
            if (validation_error(v).empty()) cells.push_back(v);
        }
    }
    return parallel_map(cells.size(), workers, [&](std::size_t i) {
        const auto r = monodromy(OscillatorParams(cells[i]), FixedPoint::Origin, settings);
        return FloquetMapRow{cells[i].gamma, cells[i].delta_hat, r.max_abs_multiplier(),
                             r.classification};
    });
}

void write_floquet_map_csv(std::ostream& os, const std::vector<FloquetMapRow>& rows) {
    os << "gamma,delta_hat,max_abs_multiplier,class\n";
    for (const auto& r : rows) {
        os << shortest(r.gamma) << ',' << shortest(r.delta_hat) << ','
           << shortest(r.max_abs_multiplier) << ',' << to_string(r.classification) << '\n';
    }
}

}  // namespace parastab
