#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "parastab/errors.hpp"
#include "parastab/ode.hpp"
#include "parastab/sampling.hpp"

using namespace parastab;

namespace {

OscillatorParams make(double dh, double g, double beta = 0, double wm = 1, double f = 0,
                      double wf = 1) {
    return OscillatorParams(ParamValues{dh, g, beta, wm, f, wf});
}

auto full_rhs(const OscillatorParams& p) {
    return [p](double t, const Vec2& v) { return rhs_full(p, {t, v[0], v[1]}); };
}

}  // namespace

TEST(Integrator, ExponentialDecay) {
    IntegratorSettings s;
    const auto traj = integrate([](double, const Vec2& v) { return Vec2{-v[0], 0.0}; },
                                {0, 1, 0}, 1.0, s);
    ASSERT_GE(traj.size(), 2u);
    EXPECT_DOUBLE_EQ(traj.back().t, 1.0);
    EXPECT_NEAR(traj.back().x, std::exp(-1.0), 1e-9);
}

TEST(Integrator, TimesStrictlyIncrease) {
    const auto traj = integrate_full(make(1, 0.3, 0.05, 1.2, 0.1, 0.8), {0, 0.2, 0.1}, 40.0, {});
    for (std::size_t i = 1; i < traj.size(); ++i) EXPECT_LT(traj[i - 1].t, traj[i].t);
}

TEST(Integrator, MatchesFixedStepRk4Reference) {
    const auto p = make(0.9, 0.2, 0.03, 1.1, 0.07, 0.7);
    IntegratorSettings s;
    s.rel_tol = 1e-11;
    s.abs_tol = 1e-13;
    const auto traj = integrate_full(p, {0, 0.3, -0.2}, 15.0, s);
    const auto ref = oracle::rk4(
        [&p](double t, const oracle::Vec2& v) {
            const auto d = rhs_full(p, {t, v[0], v[1]});
            return oracle::Vec2{d[0], d[1]};
        },
        0.0, {0.3, -0.2}, 15.0, 60000);
    EXPECT_NEAR(traj.back().x, ref[0], 1e-9);
    EXPECT_NEAR(traj.back().y, ref[1], 1e-9);
}

TEST(Integrator, EnergyConservedWhenUndampedAndUnforced) {
    const auto p = make(1, 0);
    IntegratorSettings s;
    const double period = 2 * std::numbers::pi;
    const double e0 = helmholtz_energy(0.1, 0.0);
    State st{0, 0.1, 0};
    for (int k = 1; k <= 10; ++k) {
        const auto traj = integrate_full(p, st, k * period, s);
        const auto& last = traj.back();
        EXPECT_LT(std::abs(helmholtz_energy(last.x, last.y) - e0), 10 * s.rel_tol * k);
        st = last;
    }
}

TEST(Integrator, EnergyDriftPropertyOverRandomBoundedOrbits) {
    UniformSampler rng(21);
    IntegratorSettings s;
    const auto p = make(1, 0);
    for (int i = 0; i < 30; ++i) {
        // Start strictly inside the homoclinic loop so the orbit stays bounded.
        const double x0 = rng.uniform(-0.4, 0.8);
        const double ymax = std::sqrt(2 * std::max(0.0, 0.9 / 6.0 - 0.5 * x0 * x0 + x0 * x0 * x0 / 3));
        const double y0 = rng.uniform(-ymax, ymax);
        const double e0 = helmholtz_energy(x0, y0);
        const auto traj = integrate_full(p, {0, x0, y0}, 2 * std::numbers::pi, s);
        EXPECT_LT(std::abs(helmholtz_energy(traj.back().x, traj.back().y) - e0), 10 * s.rel_tol);
    }
}

TEST(Integrator, DampedFocusDecaysToOrigin) {
    const auto traj = integrate_full(make(1, 0, 0.1), {0, 0.1, 0}, 400.0, {});
    EXPECT_LT(std::hypot(traj.back().x, traj.back().y), 1e-8);
}

TEST(Integrator, FixedStepErrorFallsAtLeastFourfoldPerHalving) {
    const auto p = make(1, 0.2, 0.02, 1.3, 0.05, 0.9);
    const auto exact = oracle::rk4(
        [&p](double t, const oracle::Vec2& v) {
            const auto d = rhs_full(p, {t, v[0], v[1]});
            return oracle::Vec2{d[0], d[1]};
        },
        0.0, {0.2, 0.0}, 5.0, 400000);
    double prev = 0.0;
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
        IntegratorSettings s;
        s.rel_tol = 1.0;
        s.abs_tol = 1.0;
        s.initial_step = h;
        s.max_step = h;
        const auto traj = integrate_full(p, {0, 0.2, 0.0}, 5.0, s);
        const double err = std::hypot(traj.back().x - exact[0], traj.back().y - exact[1]);
        if (prev > 0) EXPECT_GT(prev / err, 4.0) << "h=" << h;
        prev = err;
    }
}

TEST(Integrator, ErrorTracksTolerance) {
    const auto p = make(1, 0.2, 0.02, 1.3, 0.05, 0.9);
    IntegratorSettings ref;
    ref.rel_tol = 1e-13;
    ref.abs_tol = 1e-15;
    const auto exact = integrate_full(p, {0, 0.2, 0.0}, 5.0, ref).back();
    double prev = 0.0;
    for (double tol : {1e-5, 1e-6, 1e-7, 1e-8}) {
        IntegratorSettings s;
        s.rel_tol = tol;
        s.abs_tol = tol * 1e-2;
        const auto end = integrate_full(p, {0, 0.2, 0.0}, 5.0, s).back();
        const double err = std::hypot(end.x - exact.x, end.y - exact.y);
        if (prev > 0) EXPECT_GT(prev / err, 4.0) << "tol=" << tol;
        prev = err;
    }
}

TEST(Integrator, SampledOutputHitsGridAndEnd) {
    const auto traj =
        integrate_sampled(full_rhs(make(1, 0)), {0, 0.1, 0}, 1.0, 0.25, IntegratorSettings{});
    ASSERT_EQ(traj.size(), 5u);
    for (std::size_t i = 0; i < traj.size(); ++i) EXPECT_NEAR(traj[i].t, 0.25 * i, 1e-15);
    const auto dense = integrate_full(make(1, 0), {0, 0.1, 0}, 0.5, {});
    EXPECT_NEAR(traj[2].x, dense.back().x, 1e-9);
}

TEST(Integrator, RejectsBadSettings) {
    IntegratorSettings s;
    s.rel_tol = 0;
    EXPECT_THROW(validate(s), InvalidArgument);
    s = {};
    s.abs_tol = -1;
    EXPECT_THROW(integrate_full(make(1, 0), {0, 0, 0}, 1.0, s), InvalidArgument);
}

TEST(Integrator, StepSizeUnderflowOnFiniteTimeBlowUp) {
    // y' = y^2, y(0) = 1 blows up at t = 1.
    EXPECT_THROW(integrate([](double, const Vec2& v) { return Vec2{v[0] * v[0], 0.0}; }, {0, 1, 0},
                           2.0, IntegratorSettings{}),
                 StepSizeUnderflow);
}

TEST(Escape, RestingAtOriginNeverEscapes) {
    const auto r = integrate_until_escape(make(1, 0), {0, 0, 0}, 200.0, kDefaultEscapeX, {});
    EXPECT_FALSE(r.escaped);
    EXPECT_FALSE(r.t_exit.has_value());
}

TEST(Escape, OutsideLoopWithOutwardVelocityEscapes) {
    const auto r = integrate_until_escape(make(1, 0), {0, 1.5, 0.5}, 200.0, kDefaultEscapeX, {});
    ASSERT_TRUE(r.escaped);
    ASSERT_TRUE(r.t_exit.has_value());
    EXPECT_GT(*r.t_exit, 0.0);
    // The located exit lies on the threshold.
    IntegratorSettings tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    const auto traj = integrate_full(make(1, 0), {0, 1.5, 0.5}, *r.t_exit, tight);
    EXPECT_NEAR(traj.back().x, kDefaultEscapeX, 1e-5);
}

TEST(Escape, InsideLoopStaysBounded) {
    const auto r = integrate_until_escape(make(1, 0), {0, -0.4, 0}, 400.0, kDefaultEscapeX, {});
    EXPECT_FALSE(r.escaped);
}

TEST(EscapeProperty, UnforcedUndampedEscapeMatchesEnergyOracle) {
    // With beta = gamma = F = 0: bounded iff inside the loop (x < 1 and E < 1/6).
    UniformSampler rng(22);
    const auto p = make(1, 0);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const double x = rng.uniform(-1, 2);
        const double y = rng.uniform(-1.5, 1.5);
        const double e = helmholtz_energy(x, y);
        if (std::abs(e - 1.0 / 6.0) < 0.01 || std::abs(x - 1.0) < 0.02) continue;  // skip the separatrix
        const bool inside = x < 1.0 && e < 1.0 / 6.0;
        const auto r = integrate_until_escape(p, {0, x, y}, 32 * 2 * std::numbers::pi, kDefaultEscapeX, {});
        EXPECT_EQ(r.escaped, !inside) << "x=" << x << " y=" << y << " E=" << e;
        ++checked;
    }
    EXPECT_GT(checked, 200);
}

TEST(Escape, Preconditions) {
    EXPECT_THROW(integrate_until_escape(make(1, 0), {0, 0, 0}, 10.0, 0.5, {}), InvalidArgument);
    EXPECT_THROW(integrate_until_escape(make(1, 0), {5, 0, 0}, 1.0, 10.0, {}), InvalidArgument);
}

TEST(Escape, ReferencePeriod) {
    EXPECT_DOUBLE_EQ(reference_period(make(1, 0, 0, 2.0)), std::numbers::pi);
    EXPECT_DOUBLE_EQ(reference_period(make(1, 0, 0, 2.0, 0.1, 0.5)), 4 * std::numbers::pi);
}

TEST(TrajectoryCsv, HeaderAndFullPrecision) {
    std::ostringstream os;
    write_trajectory_csv(os, {{0.0, 0.1, -0.2}, {0.5, 1.0 / 3.0, 2.0}});
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,x,y");
    std::getline(in, line);
    EXPECT_EQ(line, "0,0.10000000000000001,-0.20000000000000001");
    std::getline(in, line);
    EXPECT_EQ(line, "0.5,0.33333333333333331,2");
}
