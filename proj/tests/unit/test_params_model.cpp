#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "parastab/errors.hpp"
#include "parastab/model.hpp"
#include "parastab/sampling.hpp"

using namespace parastab;

namespace {

OscillatorParams make(double dh, double g, double beta = 0, double wm = 1, double f = 0,
                      double wf = 1) {
    return OscillatorParams(ParamValues{dh, g, beta, wm, f, wf});
}

}  // namespace

TEST(Params, RejectsInvalidValues) {
    EXPECT_THROW(make(0.0, 0.0), InvalidArgument);
    EXPECT_THROW(make(-1.0, 0.0), InvalidArgument);
    EXPECT_THROW(make(1.0, -0.1), InvalidArgument);
    EXPECT_THROW(make(1.0, 0.0, -0.1), InvalidArgument);
    EXPECT_THROW(make(1.0, 0.0, 0.0, 0.0), InvalidArgument);
    EXPECT_THROW(make(1.0, 0.0, 0.0, 1.0, -1.0), InvalidArgument);
    EXPECT_THROW(make(1.0, 0.0, 0.0, 1.0, 0.0, 0.0), InvalidArgument);
    EXPECT_THROW(make(2.0, 0.5), InvalidArgument);  // gamma * dh = 1
    EXPECT_THROW(make(std::nan(""), 0.0), InvalidArgument);
    EXPECT_NO_THROW(make(2.0, 0.4999));
}

TEST(Params, ValidationErrorIsEmptyOnlyForValidSets) {
    EXPECT_TRUE(validation_error(ParamValues{}).empty());
    ParamValues v;
    v.gamma = 1.5;
    EXPECT_FALSE(validation_error(v).empty());
}

TEST(Params, WithModifiersCopyAndValidate) {
    const auto p = make(0.5, 0.1);
    const auto q = p.with_gamma(0.2).with_f_amp(0.3);
    EXPECT_EQ(p.gamma(), 0.1);
    EXPECT_EQ(q.gamma(), 0.2);
    EXPECT_EQ(q.f_amp(), 0.3);
    EXPECT_THROW(p.with_gamma(2.0), InvalidArgument);
}

TEST(Model, MassExamples) {
    EXPECT_DOUBLE_EQ(mass(make(0.5, 0.1), 0.0), 2.0);
    EXPECT_DOUBLE_EQ(mass(make(0.5, 0.1), std::numbers::pi / 2), 2.1);
    EXPECT_DOUBLE_EQ(mass(make(1.0, 0.0), 3.7), 1.0);
}

TEST(Model, RhsFullExamples) {
    auto d = rhs_full(make(1, 0), {0, 0, 0});
    EXPECT_EQ(d[0], 0.0);
    EXPECT_EQ(d[1], 0.0);
    d = rhs_full(make(1, 0), {0, 1, 0});
    EXPECT_EQ(d[0], 0.0);
    EXPECT_EQ(d[1], 0.0);
    const double wm = 1.3;
    d = rhs_full(make(1, 0.2, 0.01, wm), {0.0, 0.5, 0.1});
    EXPECT_DOUBLE_EQ(d[0], 0.1);
    EXPECT_NEAR(d[1], -0.25 - (0.01 + 0.2 * wm) * 0.1, 1e-15);
}

TEST(Model, RhsFullMatchesHandEvaluationAtGeneralTime) {
    // Independent transcription: momentum form d/dt(m y) = -(x - x^2) - beta y + F sin wf t.
    const auto p = make(0.8, 0.3, 0.05, 1.7, 0.12, 0.9);
    const double t = 0.77, x = 0.3, y = -0.4;
    const double m = 1 / 0.8 + 0.3 * std::sin(1.7 * t);
    const double mdot = 0.3 * 1.7 * std::cos(1.7 * t);
    const double ydot = (-(x - x * x) - 0.05 * y + 0.12 * std::sin(0.9 * t) - mdot * y) / m;
    EXPECT_NEAR(rhs_full(p, {t, x, y})[1], ydot, 1e-14);
}

TEST(Model, LinearizedExamples) {
    const auto p0 = make(0.7, 0.0, 0.0, 1.3);
    auto v = rhs_linearized_origin(p0, 0.4, {1, 0});
    EXPECT_EQ(v[0], 0.0);
    EXPECT_DOUBLE_EQ(v[1], -0.7 / (1.3 * 1.3));
    v = rhs_linearized_origin(make(0.25, 0.1), 0.0, {0, 1});
    EXPECT_DOUBLE_EQ(v[0], 1.0);
    EXPECT_NEAR(v[1], -0.025, 1e-16);
    v = rhs_linearized_saddle(p0, 1.0, {1, 0});
    EXPECT_DOUBLE_EQ(v[1], 0.7 / (1.3 * 1.3));
    v = rhs_linearized_saddle(make(1, 0.1), std::numbers::pi / 2, {1, 0});
    EXPECT_EQ(v[0], 0.0);
    EXPECT_NEAR(v[1], 1 / 1.1, 1e-15);
    for (const auto& q : {p0, make(1, 0.1, 0.2)}) {
        EXPECT_EQ(rhs_linearized_origin(q, 2.0, {0, 0}), (Vec2{0, 0}));
        EXPECT_EQ(rhs_linearized_saddle(q, 2.0, {0, 0}), (Vec2{0, 0}));
    }
}

TEST(ModelProperty, FixedPointsAreStationaryForAllTimes) {
    UniformSampler rng(11);
    for (int i = 0; i < 500; ++i) {
        const double dh = rng.uniform(0.1, 4);
        const auto p = make(dh, rng.uniform(0, 0.9 / dh), rng.uniform(0, 1), rng.uniform(0.2, 3));
        const double t = rng.uniform(-50, 50);
        for (double x : {0.0, 1.0}) {
            const auto d = rhs_full(p, {t, x, 0});
            EXPECT_EQ(d[0], 0.0);
            EXPECT_EQ(d[1], 0.0) << "x=" << x << " t=" << t;
        }
    }
}

TEST(ModelProperty, LinearizationsAreLinear) {
    UniformSampler rng(12);
    for (int i = 0; i < 500; ++i) {
        const double dh = rng.uniform(0.1, 4);
        const auto p = make(dh, rng.uniform(0, 0.9 / dh), rng.uniform(0, 1), rng.uniform(0.2, 3));
        const double tau = rng.uniform(0, 10);
        const Vec2 u{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const Vec2 w{rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const double a = rng.uniform(-3, 3);
        for (auto f : {rhs_linearized_origin, rhs_linearized_saddle}) {
            const auto fu = f(p, tau, u), fw = f(p, tau, w);
            const auto fsum = f(p, tau, {u[0] + w[0], u[1] + w[1]});
            const auto fa = f(p, tau, {a * u[0], a * u[1]});
            for (int k = 0; k < 2; ++k) {
                EXPECT_NEAR(fsum[k], fu[k] + fw[k], 1e-12 * (1 + std::abs(fsum[k])));
                EXPECT_NEAR(fa[k], a * fu[k], 1e-12 * (1 + std::abs(fa[k])));
            }
        }
    }
}

TEST(ModelProperty, LinearizationMatchesJacobianOfFullField) {
    // Central differences of rhs_full at each fixed point, converted to the scaled clock.
    UniformSampler rng(13);
    for (int i = 0; i < 100; ++i) {
        const double dh = rng.uniform(0.1, 4);
        const double wm = rng.uniform(0.3, 3);
        const auto p = make(dh, rng.uniform(0, 0.9 / dh), rng.uniform(0, 0.5), wm);
        const double tau = rng.uniform(0, 2 * std::numbers::pi);
        const double t = tau / wm;
        for (double xs : {0.0, 1.0}) {
            const double h = 1e-6;
            const double dfdx =
                (rhs_full(p, {t, xs + h, 0})[1] - rhs_full(p, {t, xs - h, 0})[1]) / (2 * h);
            const double dfdy = (rhs_full(p, {t, xs, h})[1] - rhs_full(p, {t, xs, -h})[1]) / (2 * h);
            // x' = dx/dtau = v / wm; v' = (dfdx x + dfdy v) / wm with v = wm * y'.
            const auto lin = xs == 0.0 ? rhs_linearized_origin(p, tau, {1, 0})
                                       : rhs_linearized_saddle(p, tau, {1, 0});
            EXPECT_NEAR(lin[1], dfdx / (wm * wm), 1e-7);
            const auto lin_y = xs == 0.0 ? rhs_linearized_origin(p, tau, {0, 1})
                                         : rhs_linearized_saddle(p, tau, {0, 1});
            EXPECT_NEAR(lin_y[1], dfdy / wm, 1e-7);
        }
    }
}

TEST(Model, EnergyLevelOfSaddleIsOneSixth) {
    EXPECT_DOUBLE_EQ(helmholtz_energy(1.0, 0.0), 1.0 / 6.0);
    EXPECT_DOUBLE_EQ(helmholtz_energy(-0.5, 0.0), 1.0 / 6.0);
}
