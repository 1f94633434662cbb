#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "parastab/errors.hpp"
#include "parastab/floquet.hpp"
#include "parastab/hill.hpp"
#include "parastab/sampling.hpp"

using namespace parastab;

namespace {

OscillatorParams make(double dh, double g, double beta = 0, double wm = 1) {
    return OscillatorParams(ParamValues{dh, g, beta, wm, 0, 1});
}

MonodromyResult with_multipliers(std::complex<double> a, std::complex<double> b) {
    MonodromyResult r;
    r.multipliers = {a, b};
    return r;
}

constexpr double kTwoPi = 2 * std::numbers::pi;

}  // namespace

TEST(Multipliers, RealPairReproducesTraceAndDet) {
    const auto m = multipliers_from(2.5L, 1.0L);
    EXPECT_NEAR(m[0].real() + m[1].real(), 2.5, 1e-15);
    EXPECT_NEAR(m[0].real() * m[1].real(), 1.0, 1e-15);
    EXPECT_EQ(m[0].imag(), 0.0);
}

TEST(Multipliers, ComplexPairOnUnitCircle) {
    const auto m = multipliers_from(2 * std::cos(0.3L), 1.0L);
    EXPECT_NEAR(std::abs(m[0]), 1.0, 1e-15);
    EXPECT_NEAR(m[0].imag(), std::sin(0.3), 1e-15);
    EXPECT_EQ(m[0], std::conj(m[1]));
}

TEST(Multipliers, SmallRootWithoutCancellation) {
    // tr = 1e8 + 1e-8, det = 1: roots 1e8 and 1e-8.
    const auto m = multipliers_from(1e8L + 1e-8L, 1.0L);
    EXPECT_NEAR(m[1].real(), 1e-8, 1e-20);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(with_multipliers(0.5, 0.5)), Stability::Stable);
    EXPECT_EQ(classify(with_multipliers(1.2, 1 / 1.2)), Stability::Unstable);
    EXPECT_EQ(classify(with_multipliers(std::polar(1.0, 0.4), std::polar(1.0, -0.4))),
              Stability::Marginal);
    EXPECT_EQ(classify(with_multipliers(1.0 + 1e-6, 1.0), 1e-3), Stability::Marginal);
    EXPECT_THROW(classify(with_multipliers(1, 1), -1.0), InvalidArgument);
}

TEST(Monodromy, UndampedConstantCoefficientOrigin) {
    const auto r = monodromy_origin(make(0.3, 0));
    EXPECT_NEAR(r.trace, 2 * std::cos(kTwoPi * std::sqrt(0.3)), 1e-12);
    EXPECT_NEAR(r.det, 1.0, 1e-13);
    EXPECT_NEAR(r.m11, std::cos(kTwoPi * std::sqrt(0.3)), 1e-12);
    EXPECT_EQ(r.classification, Stability::Marginal);
}

TEST(MonodromyProperty, ConstantCoefficientOracle) {
    UniformSampler rng(31);
    for (int i = 0; i < 25; ++i) {
        const double dh = rng.uniform(0.1, 4), wm = rng.uniform(0.3, 3), beta = rng.uniform(0, 0.3);
        const auto p = make(dh, 0, beta, wm);
        // x'' + (dh beta / wm) x' + (dh / wm^2) x = 0 over 2 pi.
        const double a = 0.5 * dh * beta / wm;
        const auto o = oracle::constant_coefficient_monodromy(a, dh / (wm * wm), kTwoPi);
        const auto r = monodromy_origin(p);
        EXPECT_NEAR(r.trace, o.trace, 1e-10 * (1 + std::abs(o.trace)));
        EXPECT_NEAR(r.det, o.det, 1e-12);
        const auto s = monodromy_saddle(p);
        const auto os = oracle::constant_coefficient_monodromy(a, -dh / (wm * wm), kTwoPi);
        EXPECT_NEAR(s.trace, os.trace, 1e-9 * std::abs(os.trace));
    }
}

TEST(Monodromy, DampedFocusIsStable) {
    const auto r = monodromy_origin(make(0.3, 0, 0.05));
    EXPECT_LT(std::abs(r.multipliers[0]), 1.0);
    EXPECT_LT(std::abs(r.multipliers[1]), 1.0);
    EXPECT_EQ(r.classification, Stability::Stable);
}

TEST(Monodromy, InsideFirstTongueIsUnstable) {
    EXPECT_EQ(monodromy_origin(make(0.25, 0.06)).classification, Stability::Unstable);
}

TEST(Monodromy, SaddleHyperbolicExample) {
    const auto r = monodromy_saddle(make(1, 0));
    EXPECT_NEAR(r.trace / (2 * std::cosh(kTwoPi)), 1.0, 1e-10);
    EXPECT_NEAR(r.det, 1.0, 1e-8);
    EXPECT_EQ(r.classification, Stability::Unstable);
}

TEST(Monodromy, SaddleNearMassVanishingLimit) {
    const auto r = monodromy_saddle(make(1, 0.999, 0.05, 1.0));
    EXPECT_EQ(r.classification, Stability::Unstable);
    EXPECT_TRUE(std::isfinite(r.trace));
}

TEST(MonodromyProperty, SaddleAlwaysUnstable) {
    UniformSampler rng(32);
    for (int i = 0; i < 60; ++i) {
        const double dh = rng.uniform(0.1, 4);
        const auto p = make(dh, rng.uniform(0, 0.9) / dh, rng.uniform(0, 0.1), rng.uniform(0.3, 3));
        EXPECT_EQ(monodromy_saddle(p).classification, Stability::Unstable)
            << "dh=" << p.delta_hat() << " g=" << p.gamma() << " wm=" << p.omega_m();
    }
}

TEST(MonodromyProperty, LiouvilleIdentity) {
    UniformSampler rng(33);
    for (int i = 0; i < 40; ++i) {
        const double dh = rng.uniform(0.1, 4);
        const auto p = make(dh, rng.uniform(0, 0.9) / dh, rng.uniform(0, 0.1), rng.uniform(0.3, 3));
        for (auto fp : {FixedPoint::Origin, FixedPoint::Saddle}) {
            const auto r = monodromy(p, fp);
            const double want = liouville_determinant(p);
            // det = m11 m22 - m12 m21 cancels; the floor tracks the size of the products.
            const double products = std::abs(r.m11 * r.m22) + std::abs(r.m12 * r.m21);
            EXPECT_NEAR(r.det, want, 1e-8 * std::max(1.0, want) + 1e-13 * products);
        }
    }
}

TEST(MonodromyProperty, MultipliersAreEigenvalues) {
    UniformSampler rng(34);
    for (int i = 0; i < 20; ++i) {
        const double dh = rng.uniform(0.1, 3);
        const auto r = monodromy_origin(make(dh, rng.uniform(0, 0.5) / dh, rng.uniform(0, 0.1)));
        const auto sum = r.multipliers[0] + r.multipliers[1];
        const auto prod = r.multipliers[0] * r.multipliers[1];
        EXPECT_NEAR(sum.real(), r.trace, 1e-12 * (1 + std::abs(r.trace)));
        EXPECT_NEAR(sum.imag(), 0.0, 1e-12);
        EXPECT_NEAR(prod.real(), r.det, 1e-10 * (1 + std::abs(r.det)));
    }
}

TEST(FloquetHill, SolvedBoundariesHaveUnitMultipliers) {
    for (double g : {0.03, 0.08, 0.15}) {
        for (int k : {1, 2}) {
            for (auto fam : {DeterminantFamily::OddCosine, DeterminantFamily::OddSine}) {
                const double dh = solve_transition_curve(fam, k, g, 1.0);
                const auto r = monodromy_origin(make(dh, g));
                EXPECT_NEAR(r.max_abs_multiplier(), 1.0, 1e-6) << "k=" << k << " g=" << g;
            }
        }
    }
}

TEST(FloquetProperty, EvenTongueCoexistenceNeverUnstable) {
    UniformSampler rng(35);
    for (int i = 0; i < 60; ++i) {
        const double wm = rng.uniform(0.5, 2.0);
        const int n = 1 + static_cast<int>(rng.index(2));
        const double dh = n * n * wm * wm * (1 + rng.uniform(-0.02, 0.02));
        const double g = rng.uniform(0, 0.3) / dh;
        const auto r = monodromy_origin(make(dh, g, 0, wm));
        EXPECT_NE(r.classification, Stability::Unstable)
            << "dh=" << dh << " g=" << g << " wm=" << wm << " max|l|=" << r.max_abs_multiplier();
        const auto damped = monodromy_origin(make(dh, g, 0.01, wm));
        EXPECT_EQ(damped.classification, Stability::Stable);
    }
}

TEST(FloquetMap, SkipsInvalidCellsAndIsWorkerIndependent) {
    const auto base = make(1, 0);
    const std::vector<double> gammas{0.0, 0.2, 0.6};
    const std::vector<double> deltas{0.25, 1.0, 2.0};
    const auto a = floquet_map(base, gammas, deltas, default_floquet_settings(), 1);
    const auto b = floquet_map(base, gammas, deltas, default_floquet_settings(), 3);
    EXPECT_EQ(a.size(), 8u);  // gamma 0.6 with dh 2.0 violates gamma dh < 1
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].max_abs_multiplier, b[i].max_abs_multiplier);
        EXPECT_EQ(a[i].classification, b[i].classification);
    }
    std::ostringstream os;
    write_floquet_map_csv(os, a);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "gamma,delta_hat,max_abs_multiplier,class");
}
