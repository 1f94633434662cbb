#include "parastab/hill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "parastab/errors.hpp"
#include "parastab/format.hpp"

namespace parastab {

std::string_view to_string(DeterminantFamily f) {
    switch (f) {
        case DeterminantFamily::EvenCosine: return "EvenCosine";
        case DeterminantFamily::EvenSine: return "EvenSine";
        case DeterminantFamily::OddCosine: return "OddCosine";
        case DeterminantFamily::OddSine: return "OddSine";
    }
    return "?";
}

std::optional<DeterminantFamily> parse_family(std::string_view s) {
    for (auto f : {DeterminantFamily::EvenCosine, DeterminantFamily::EvenSine,
                   DeterminantFamily::OddCosine, DeterminantFamily::OddSine}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

InceCoefficients ince_coefficients(double gamma, double delta_hat, double omega_m) {
    const double g = gamma * delta_hat;
    return {g, -2.0 * g, 4.0 * delta_hat / (omega_m * omega_m), 0.0};
}

namespace {

bool is_odd(DeterminantFamily f) {
    return f == DeterminantFamily::OddCosine || f == DeterminantFamily::OddSine;
}

// Harmonic index carried by row i.
double harmonic(DeterminantFamily f, std::size_t i) {
    switch (f) {
        case DeterminantFamily::EvenCosine: return 2.0 * static_cast<double>(i);
        case DeterminantFamily::EvenSine: return 2.0 * static_cast<double>(i + 1);
        default: return 2.0 * static_cast<double>(i) + 1.0;
    }
}

double lu_determinant(SquareMatrix a) {
    const std::size_t n = a.size();
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > best) {
                best = std::abs(a(r, col));
                piv = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        const double p = a(col, col);
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / p;
            if (factor == 0.0) continue;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
        }
    }
    return det;
}

void check_family_k(int k) {
    if (k < 1) throw InvalidArgument("tongue index k must be >= 1");
}

}  // namespace

SquareMatrix build_hill_matrix(DeterminantFamily family, double gamma, double delta_hat,
                               double omega_m, std::size_t n) {
    if (n < 2) throw InvalidArgument("Hill truncation must be at least 2x2");
    const double c = 4.0 * delta_hat / (omega_m * omega_m);
    const double g = gamma * delta_hat;
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double j = harmonic(family, i);
        m(i, i) = c - j * j;
        if (i + 1 < n) {
            const double coupling = -g * j * (j + 2.0) / 2.0;
            m(i, i + 1) = coupling;
            m(i + 1, i) = coupling;
        }
    }
    switch (family) {
        case DeterminantFamily::EvenCosine:
            // a_0 equation: c a_0 - 2 g a_2 = 0; nothing couples back into a_0.
            m(0, 1) = -2.0 * g;
            m(1, 0) = 0.0;
            break;
        case DeterminantFamily::OddCosine: m(0, 0) += 0.5 * g; break;
        case DeterminantFamily::OddSine: m(0, 0) -= 0.5 * g; break;
        case DeterminantFamily::EvenSine: break;
    }
    return m;
}

double det_eval(const SquareMatrix& m) { return lu_determinant(m); }

double scaled_det(const SquareMatrix& m) {
    SquareMatrix s = m;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        // Floor at 1 keeps the result continuous in the matrix entries.
        double row_max = 1.0;
        for (std::size_t j = 0; j < n; ++j) row_max = std::max(row_max, std::abs(m(i, j)));
        for (std::size_t j = 0; j < n; ++j) s(i, j) /= row_max;
    }
    return lu_determinant(std::move(s));
}

double seed_delta(DeterminantFamily family, int k, double omega_m) {
    check_family_k(k);
    if (is_odd(family)) {
        const double h = (2.0 * k - 1.0) * omega_m / 2.0;
        return h * h;
    }
    const double h = static_cast<double>(k) * omega_m;
    return h * h;
}

double solve_transition_curve(DeterminantFamily family, int k, double gamma, double omega_m,
                              std::size_t n, double tol) {
    check_family_k(k);
    if (n < static_cast<std::size_t>(2 * k + 6)) {
        throw InvalidArgument("truncation too small for tongue " + std::to_string(k) +
                              " (need n >= 2k + 6)");
    }
    if (gamma < 0.0 || !(omega_m > 0.0) || !(tol > 0.0)) {
        throw InvalidArgument("solve_transition_curve: need gamma >= 0, omega_m > 0, tol > 0");
    }

    const double seed = seed_delta(family, k, omega_m);
    double spacing = seed_delta(family, k + 1, omega_m) - seed;
    if (k > 1) spacing = std::min(spacing, seed - seed_delta(family, k - 1, omega_m));
    if (family == DeterminantFamily::EvenCosine && k == 1) {
        spacing = std::min(spacing, seed - kTrivialTransitionCurve);
    }

    auto f = [&](double d) {
        return scaled_det(build_hill_matrix(family, gamma, d, omega_m, n));
    };
    const double lo_limit = seed * 1e-9;
    const double hi_limit =
        gamma > 0.0 ? (1.0 - 1e-9) / gamma : std::numeric_limits<double>::infinity();

    double a = 0, b = 0, fa = 0, fb = 0;
    bool bracketed = false;
    for (double radius : {0.4 * spacing, 0.8 * spacing}) {
        a = std::max(seed - radius, lo_limit);
        b = std::min(seed + radius, hi_limit);
        if (!(b > a)) continue;
        fa = f(a);
        fb = f(b);
        if (fa == 0.0) return a;
        if (fb == 0.0) return b;
        if ((fa < 0.0) != (fb < 0.0)) {
            bracketed = true;
            break;
        }
    }
    if (!bracketed) {
        throw NoRootInBracket("no sign change of the " + std::string(to_string(family)) +
                              " determinant near delta_hat=" + shortest(seed) +
                              " at gamma=" + shortest(gamma) + " (n=" + std::to_string(n) + ")");
    }

    auto converged = [tol](double lo, double hi) {
        return hi - lo <= tol * std::max(1.0, std::abs(0.5 * (lo + hi)));
    };

    // Bisection down to a small bracket, then Illinois secant steps.
    const double coarse = 1e-6 * std::max(1.0, seed);
    while (b - a > coarse) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }

    int side = 0;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 200 && !converged(a, b); ++it) {
        double x_new = (a * fb - b * fa) / (fb - fa);
        if (!(x_new > a && x_new < b)) x_new = 0.5 * (a + b);
        const double step = std::abs(x_new - x);
        x = x_new;
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = x;
            fb = fx;
            if (side == 1) fa *= 0.5;
            side = 1;
        }
        if (step <= 0.25 * tol * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

TransitionCurvePoint solve_transition_point(DeterminantFamily family, int k, double gamma,
                                            double omega_m, std::size_t n, double tol) {
    return {gamma, solve_transition_curve(family, k, gamma, omega_m, n, tol), family, k, n};
}

int series_printed_order(int k) {
    switch (k) {
        case 1: return 1;
        case 2: return 3;
        case 3: return 5;
        default: throw Unsupported("no published series for tongue k=" + std::to_string(k));
    }
}

double series_prediction(DeterminantFamily family, int k, double gamma, double omega_m,
                         int max_order) {
    if (!is_odd(family)) {
        throw Unsupported("series are published only for the odd (2 pi / 4 pi) families");
    }
    const int printed = series_printed_order(k);
    const int order = max_order < 0 ? printed : std::min(max_order, printed);
    // +1 for OddSine, -1 for OddCosine on the splitting term.
    const double split = family == DeterminantFamily::OddSine ? 1.0 : -1.0;
    const double w2 = omega_m * omega_m;
    auto wpow = [&](int p) { return std::pow(omega_m, p); };

    struct Term {
        int power;
        double coefficient;
    };
    std::vector<Term> terms;
    switch (k) {
        case 1:
            terms = {{0, 0.25 * w2}, {1, split * wpow(4) / 32.0}};
            break;
        case 2:
            terms = {{0, 2.25 * w2},
                     {2, -16767.0 / 4096.0 * wpow(6)},
                     {3, split * 6561.0 / 131072.0 * wpow(8)}};
            break;
        case 3:
            terms = {{0, 6.25 * w2},
                     {2, -1109375.0 / 12288.0 * wpow(6)},
                     {4, 3030048828125.0 / 1811939328.0 * wpow(10)},
                     {5, split * 2197265625.0 / 2147483648.0 * wpow(12)}};
            break;
        default: break;
    }
    double value = 0.0;
    for (const auto& t : terms) {
        if (t.power <= order) value += t.coefficient * std::pow(gamma, t.power);
    }
    return value;
}

double tongue_width(int k, double gamma, double omega_m, std::size_t n) {
    const double upper = solve_transition_curve(DeterminantFamily::OddSine, k, gamma, omega_m, n);
    const double lower =
        solve_transition_curve(DeterminantFamily::OddCosine, k, gamma, omega_m, n);
    return std::abs(upper - lower);
}

namespace {
std::pair<double, double> coexistence_parts(double gamma, double delta_hat, double omega_m,
                                            std::size_t n) {
    if (n < 3) throw InvalidArgument("coexistence check needs n >= 3");
    const double c = 4.0 * delta_hat / (omega_m * omega_m);
    const double even_cos =
        det_eval(build_hill_matrix(DeterminantFamily::EvenCosine, gamma, delta_hat, omega_m, n + 1));
    const double even_sin =
        det_eval(build_hill_matrix(DeterminantFamily::EvenSine, gamma, delta_hat, omega_m, n));
    return {even_cos, c * even_sin};
}
}  // namespace

double coexistence_residual(double gamma, double delta_hat, double omega_m, std::size_t n) {
    const auto [lhs, rhs] = coexistence_parts(gamma, delta_hat, omega_m, n);
    return std::abs(lhs - rhs);
}

double coexistence_relative_residual(double gamma, double delta_hat, double omega_m,
                                     std::size_t n) {
    const auto [lhs, rhs] = coexistence_parts(gamma, delta_hat, omega_m, n);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale == 0.0) return 0.0;
    return std::abs(lhs - rhs) / scale;
}

std::optional<std::pair<double, double>> damped_first_tongue(double gamma, double beta,
                                                             double omega_m) {
    if (gamma < 0.0 || beta < 0.0 || !(omega_m > 0.0)) {
        throw InvalidArgument("damped_first_tongue: need gamma, beta >= 0 and omega_m > 0");
    }
    // Factored radicand: exact zero at the tangent point gamma omega_m = 4 beta.
    const double radicand = (gamma * omega_m - 4.0 * beta) * (gamma * omega_m + 4.0 * beta);
    if (radicand < 0.0) return std::nullopt;
    const double center = omega_m * omega_m / 4.0;
    const double half = omega_m * omega_m * omega_m / 32.0 * std::sqrt(radicand);
    return std::pair{center - half, center + half};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InvalidArgument("loglog_slope needs two equally sized samples of length >= 2");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("loglog_slope needs positive data");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<TongueRow> trace_tongues(int k_max, const std::vector<double>& gammas,
                                     double omega_m, std::size_t n) {
    std::vector<TongueRow> rows;
    for (int k = 1; k <= k_max; ++k) {
        for (auto fam : {DeterminantFamily::OddCosine, DeterminantFamily::OddSine}) {
            for (double g : gammas) {
                TongueRow row{fam, k, g, std::nullopt};
                try {
                    row.delta_hat = solve_transition_curve(fam, k, g, omega_m, n);
                } catch (const NoRootInBracket&) {
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_tongues_csv(std::ostream& os, const std::vector<TongueRow>& rows) {
    os << "family,k,gamma,delta_hat\n";
    for (const auto& r : rows) {
        os << to_string(r.family) << ',' << r.k << ',' << shortest(r.gamma) << ','
           << (r.delta_hat ? shortest(*r.delta_hat) : std::string{}) << '\n';
    }
}

}  // namespace parastab
