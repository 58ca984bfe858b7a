#include <gtest/gtest.h>

#include "support.hpp"

using namespace wgtest;
using windguide::wind::Position;
using windguide::wind::SinusoidalWindField;
using windguide::wind::WindFieldSpec;

namespace {

WindFieldSpec eastward_wind(double a, double omega) {
    WindFieldSpec s;
    s.w_m0 = 9.5;
    s.a_x = a;
    s.a_y = a;
    s.omega_mx = omega;
    s.omega_my = omega;
    s.psi_w = 90.0 * kDeg;
    return s;
}

}  // namespace

TEST(WindField, UniformMagnitudeBlowsEast) {
    const auto s = wind::sample(eastward_wind(0.0, 1.0), 20.0, {3.0, -7.0, 1.0}, 4.0);
    EXPECT_NEAR(s.w_x(), 0.475, 1e-15);
    EXPECT_NEAR(s.w_y(), 0.0, 1e-15);
    EXPECT_EQ(s.w_h(), 0.0);
}

TEST(WindField, GradientAtOriginMatchesHandDerivative) {
    const double omega = 0.7;
    const auto s = wind::sample(eastward_wind(0.5, omega), 20.0, {0.0, 0.0, 0.0}, 0.0);
    EXPECT_NEAR(s.grad[0][0], 0.475 * 0.5 * omega, 1e-15);
    EXPECT_NEAR(s.grad[0][1], 0.475 * 0.5 * omega, 1e-15);
    EXPECT_NEAR(s.grad[1][0], 0.0, 1e-15);
}

TEST(WindField, NoVerticalWindOrTimeVariation) {
    checks::Sampler rnd(11);
    for (int k = 0; k < 200; ++k) {
        auto spec = eastward_wind(rnd.uniform(-0.5, 0.5), rnd.uniform(0.01, 10.0));
        spec.psi_w = rnd.uniform(0.0, 6.28);
        const auto s = wind::sample(spec, 20.0, {rnd.uniform(-9, 9), rnd.uniform(-9, 9), rnd.uniform(0, 3)}, 1.0);
        EXPECT_EQ(s.w_h(), 0.0);
        for (int i = 0; i < 3; ++i) {
            EXPECT_EQ(s.grad[i][2], 0.0);
            EXPECT_EQ(s.grad[2][i], 0.0);
            EXPECT_EQ(s.dt_partials[i], 0.0);
        }
    }
}

TEST(WindField, ComponentsFollowMagnitudeAndDirection) {
    auto spec = eastward_wind(0.3, 2.0);
    spec.psi_w = 30.0 * kDeg;
    const SinusoidalWindField f(spec, 20.0);
    const Position p{0.4, -1.3, 0.0};
    const double mag = 9.5 / 20.0 * (1.0 + 0.3 * std::sin(2.0 * 0.4) + 0.3 * std::sin(2.0 * -1.3));
    EXPECT_NEAR(f.magnitude(p), mag, 1e-15);
    const auto s = f.sample(p, 0.0);
    EXPECT_NEAR(s.w_x(), mag * std::sin(spec.psi_w), 1e-15);
    EXPECT_NEAR(s.w_y(), mag * std::cos(spec.psi_w), 1e-15);
}

TEST(WindField, VerifyGradientsConstantFieldIsExact) {
    const SinusoidalWindField f(eastward_wind(0.0, 1.0), 20.0);
    EXPECT_EQ(wind::verify_gradients(f, {1.0, 2.0, 0.0}, 0.0, 1e-6), 0.0);
}

TEST(WindField, VerifyGradientsRandomSpecs) {
    checks::Sampler rnd(5);
    for (int k = 0; k < 1000; ++k) {
        auto spec = eastward_wind(rnd.uniform(-0.5, 0.5), std::pow(10.0, rnd.uniform(-2.0, 1.0)));
        spec.a_y = rnd.uniform(-0.5, 0.5);
        spec.omega_my = std::pow(10.0, rnd.uniform(-2.0, 1.0));
        const SinusoidalWindField f(spec, 20.0);
        EXPECT_LT(wind::verify_gradients(f, {rnd.uniform(-20, 20), rnd.uniform(-20, 20), 0.0}, 0.0, 1e-6), 1e-6);
    }
}

TEST(WindField, VerifyGradientsStressPoint) {
    auto spec = eastward_wind(1.0, 10.0);
    spec.a_y = 0.0;
    const SinusoidalWindField f(spec, 20.0);
    // sin(10 x) has its steepest slope at x = 0
    EXPECT_LT(wind::verify_gradients(f, {0.0, 0.3, 0.0}, 0.0, 1e-6), 1e-5);
}

TEST(WindField, NonnegativeMagnitudeFlag) {
    WindFieldSpec s = eastward_wind(0.5, 1.0);
    EXPECT_TRUE(s.magnitude_nonnegative());
    s.a_x = 0.8;
    EXPECT_FALSE(s.magnitude_nonnegative());
}

TEST(WindField, MagnitudeAndStationarity) {
    checks::Sampler rnd(12);
    for (int k = 0; k < 500; ++k) {
        auto spec = eastward_wind(rnd.uniform(-0.5, 0.5), rnd.uniform(0.01, 10.0));
        spec.psi_w = rnd.uniform(0.0, 6.28);
        const SinusoidalWindField f(spec, 20.0);
        const Position p{rnd.uniform(-30, 30), rnd.uniform(-30, 30), 0.0};
        const auto a = f.sample(p, 0.0), b = f.sample(p, rnd.uniform(1.0, 500.0));
        EXPECT_NEAR(std::hypot(a.w_x(), a.w_y()), std::abs(f.magnitude(p)), 1e-15);
        EXPECT_EQ(a.w, b.w);
        EXPECT_EQ(a.grad, b.grad);
    }
}
