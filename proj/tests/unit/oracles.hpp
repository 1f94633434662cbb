#pragma once

// Reference computations that share no code with the library under test.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Vec2 = std::array<double, 2>;

// Classical RK4 with a fixed number of steps.
inline Vec2 rk4(const std::function<Vec2(double, const Vec2&)>& f, double t0, Vec2 y, double t1,
                std::size_t steps) {
    const double h = (t1 - t0) / static_cast<double>(steps);
    double t = t0;
    for (std::size_t i = 0; i < steps; ++i) {
        const Vec2 k1 = f(t, y);
        const Vec2 k2 = f(t + h / 2, {y[0] + h / 2 * k1[0], y[1] + h / 2 * k1[1]});
        const Vec2 k3 = f(t + h / 2, {y[0] + h / 2 * k2[0], y[1] + h / 2 * k2[1]});
        const Vec2 k4 = f(t + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
        for (int j = 0; j < 2; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        t = t0 + static_cast<double>(i + 1) * h;
    }
    return y;
}

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * h);
    return s * h / 3.0;
}

// Laplace expansion along the first row; fine for n <= 7.
inline double cofactor_det(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    double d = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<double>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<double> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        d += (c % 2 ? -1.0 : 1.0) * m[0][c] * cofactor_det(minor);
    }
    return d;
}

// Monodromy of x'' + 2 a x' + w2 x = 0 over [0, T], by diagonalization.
struct ConstCoeffMonodromy {
    double trace;
    double det;
};
inline ConstCoeffMonodromy constant_coefficient_monodromy(double a, double w2, double period) {
    const double det = std::exp(-2.0 * a * period);
    const double disc = w2 - a * a;
    double tr;
    if (disc > 0) {
        tr = 2.0 * std::exp(-a * period) * std::cos(std::sqrt(disc) * period);
    } else {
        tr = 2.0 * std::exp(-a * period) * std::cosh(std::sqrt(-disc) * period);
    }
    return {tr, det};
}

// Area enclosed by the level set y^2/2 + x^2/2 - x^3/3 = 1/6, x in [-1/2, 1].
inline double homoclinic_loop_area() {
    auto half_height = [](double x) {
        const double e = 1.0 / 6.0 - 0.5 * x * x + x * x * x / 3.0;
        return e > 0 ? std::sqrt(2.0 * e) : 0.0;
    };
    return 2.0 * simpson(half_height, -0.5, 1.0, 200000);
}

}  // namespace oracle
