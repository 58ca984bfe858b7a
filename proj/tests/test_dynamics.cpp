#include <gtest/gtest.h>

#include "support.hpp"
#include "windguide/errors.hpp"
#include "windguide/guidance.hpp"
#include "windguide_checks/oracles.hpp"

using namespace wgtest;
using windguide::dynamics::Controls;
using windguide::dynamics::State;

TEST(Normalization, DensityParameterByHand) {
    // 1.225 * 0.55 * 400 / (2 * 20 * 9.80665)
    EXPECT_NEAR(ctx().rho_bar, 269.5 / 392.266, 1e-15);
    EXPECT_NEAR(ctx().rho_bar, 0.687, 5e-4);
}

TEST(Normalization, InducedDragFromMaxLiftToDrag) {
    EXPECT_NEAR(ctx().k_induced, 1.0 / (4.0 * 0.03 * 144.0), 1e-15);
    EXPECT_NEAR(checks::numeric_max_lift_to_drag(ctx().c_d0, ctx().k_induced), 12.0, 1e-9);
}

TEST(Normalization, Scales) {
    const auto& c = ctx();
    EXPECT_DOUBLE_EQ(c.t_n, 20.0 / 9.80665);
    EXPECT_DOUBLE_EQ(c.length_scale, 400.0 / 9.80665);
    EXPECT_DOUBLE_EQ(c.power_scale, 20.0 * 9.80665 * 20.0);
    EXPECT_DOUBLE_EQ(c.to_v_bar(c.v_n), 1.0);
    EXPECT_NEAR(c.to_v_bar(5.0 * 0.3048), 0.0762, 1e-15);
    EXPECT_NEAR(c.limits.p_bar_max, 1400.0 / c.power_scale, 1e-15);
    EXPECT_NEAR(c.limits.mu_max, 40.0 * kDeg, 1e-15);
}

TEST(Normalization, RejectsInvalidInputs) {
    auto p = dynamics::scan_eagle_params();
    EXPECT_THROW(dynamics::build_norm_context(p, 0.0), DomainError);
    EXPECT_THROW(dynamics::build_norm_context(p, 20.0, -1.0), DomainError);
    p.mu_max = 95.0 * kDeg;
    EXPECT_THROW(dynamics::build_norm_context(p), DomainError);
    p = dynamics::scan_eagle_params();
    p.c_l_min = 2.0;
    EXPECT_THROW(dynamics::build_norm_context(p), DomainError);
    p = dynamics::scan_eagle_params();
    p.mass = 0.0;
    EXPECT_THROW(dynamics::build_norm_context(p), DomainError);
}

TEST(WindRates, UniformWindGivesZero) {
    wind::WindSample w;
    w.w = {0.3, -0.2, 0.1};
    const State s{1.1, 0.7, 0.05};
    const auto r = dynamics::wind_relative_rates(s, w);
    EXPECT_EQ(r.w_v_rate, 0.0);
    EXPECT_EQ(r.w_psi_rate, 0.0);
    EXPECT_EQ(r.w_gamma_rate, 0.0);
}

TEST(WindRates, EastboundShearAlongX) {
    const double c = 0.13, v = 1.08, wx = 0.475;
    wind::WindSample w;
    w.w = {wx, 0.0, 0.0};
    w.grad[0][0] = c;
    const State s{v, 90.0 * kDeg, 0.0};
    EXPECT_NEAR(dynamics::wind_relative_rates(s, w).w_v_rate, c * (v + wx), 1e-15);
    EXPECT_NEAR(dynamics::level_flight_wind_v_rate(v, s.psi, w), c * (v + wx), 1e-15);
}

TEST(WindRates, CrossGradientNorthboundVanishes) {
    wind::WindSample w;
    w.w = {0.2, 0.3, 0.0};
    w.grad[0][1] = 0.17;
    const State s{1.0, 0.0, 0.0};
    EXPECT_NEAR(dynamics::wind_relative_rates(s, w).w_v_rate, 0.0, 1e-16);
}

TEST(WindRates, AirspeedRateMatchesDerivativeAlongPath) {
    // W_V = W . e_V along a straight level path; its time derivative is W_V' for fixed V, Psi.
    LinearWindField f;
    f.w0 = {0.2, -0.1, 0.0};
    f.grad[0] = {0.05, -0.03, 0.0};
    f.grad[1] = {0.02, 0.04, 0.0};
    f.tp = {0.01, -0.02, 0.0};
    const double v = 1.1, psi = 0.6, h = 1e-6;
    auto w_v_along = [&](double t) {
        // straight path at the ground velocity found at the origin
        const auto s0 = f.sample({0, 0, 0}, 0.0);
        const double gx = v * std::sin(psi) + s0.w[0], gy = v * std::cos(psi) + s0.w[1];
        const auto s = f.sample({gx * t, gy * t, 0.0}, t);
        return s.w[0] * std::sin(psi) + s.w[1] * std::cos(psi);
    };
    const double fd = (w_v_along(h) - w_v_along(-h)) / (2 * h);
    const State s{v, psi, 0.0};
    EXPECT_NEAR(dynamics::wind_relative_rates(s, f.sample({0, 0, 0}, 0.0)).w_v_rate, fd, 1e-9);
}

TEST(Dynamics, TrimResidual) {
    const double v = guidance::optimal_loiter_speed(ctx());
    const State s{v, 1.2, 0.0};
    const auto r = dynamics::state_derivative(s, dynamics::level_trim_controls(v, ctx()), {}, ctx());
    EXPECT_LT(std::abs(r.v_bar), 1e-12);
    EXPECT_LT(std::abs(r.psi), 1e-12);
    EXPECT_LT(std::abs(r.gamma), 1e-12);
    EXPECT_LT(std::abs(r.h_bar), 1e-12);
    EXPECT_NEAR(r.x_bar, v * std::sin(1.2), 1e-15);
    EXPECT_NEAR(r.y_bar, v * std::cos(1.2), 1e-15);
}

TEST(Dynamics, GlideWithNoPowerOrLift) {
    const double v = 1.3;
    const State s{v, 0.0, 0.0};
    const auto r = dynamics::state_derivative(s, Controls{0.0, 0.0, 0.0}, {}, ctx());
    EXPECT_NEAR(r.v_bar, -ctx().rho_bar * v * v * ctx().c_d0, 1e-15);
    EXPECT_NEAR(r.gamma, -1.0 / v, 1e-15);
}

TEST(Dynamics, ConstantWindAddsToGroundSpeed) {
    wind::WindSample w;
    w.w = {0.3, 0.0, 0.0};
    const State s{1.0, 0.4, 0.1};
    const auto r = dynamics::state_derivative(s, dynamics::level_trim_controls(1.0, ctx()), w, ctx());
    EXPECT_NEAR(r.x_bar, std::cos(0.1) * std::sin(0.4) + 0.3, 1e-15);
}

TEST(Dynamics, AirspeedGuard) {
    const State s{0.01, 0.0, 0.0};
    EXPECT_THROW(dynamics::state_derivative(s, Controls{}, {}, ctx()), SingularStateError);
}

TEST(Dynamics, InstantaneousPower) {
    const State s{1.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(dynamics::instantaneous_power(Controls{0.1, 0.5, 0.0}, s), 0.1);
    EXPECT_EQ(dynamics::instantaneous_power(Controls{0.0, 0.5, 0.0}, State{1.7}), 0.0);
    const double v = guidance::optimal_loiter_speed(ctx());
    EXPECT_NEAR(dynamics::level_flight_power(v, ctx()), 0.104, 1e-3);
}

TEST(Dynamics, AngleWrapping) {
    EXPECT_NEAR(dynamics::wrap_two_pi(-0.5), 2 * std::numbers::pi - 0.5, 1e-15);
    EXPECT_NEAR(dynamics::wrap_two_pi(7.0), 7.0 - 2 * std::numbers::pi, 1e-15);
    EXPECT_NEAR(dynamics::wrap_pi(3.5), 3.5 - 2 * std::numbers::pi, 1e-15);
    EXPECT_NEAR(dynamics::wrap_pi(-0.3), -0.3, 1e-15);
}

TEST(Normalization, RoundTrip) {
    checks::Sampler rnd(31);
    const auto& c = ctx();
    for (int k = 0; k < 1000; ++k) {
        const double v = rnd.uniform(1.0, 60.0), t = rnd.uniform(0.0, 1000.0);
        const double p = rnd.uniform(0.0, 2000.0), l = rnd.uniform(-5000.0, 5000.0);
        EXPECT_NEAR(c.to_mps(c.to_v_bar(v)), v, 1e-12 * v);
        EXPECT_NEAR(c.to_seconds(c.to_t_bar(t)), t, 1e-12 * std::max(1.0, t));
        EXPECT_NEAR(c.to_watts(c.to_p_bar(p)), p, 1e-12 * std::max(1.0, p));
        EXPECT_NEAR(c.to_meters(c.to_length_bar(l)), l, 1e-12 * std::max(1.0, std::abs(l)));
    }
}

TEST(WindRates, LinearInGradientsAndTimePartials) {
    checks::Sampler rnd(32);
    auto random_sample = [&] {
        wind::WindSample w;
        for (int i = 0; i < 3; ++i) {
            w.dt_partials[i] = rnd.uniform(-0.2, 0.2);
            for (int j = 0; j < 3; ++j) w.grad[i][j] = rnd.uniform(-0.2, 0.2);
        }
        return w;
    };
    for (int k = 0; k < 500; ++k) {
        const State s{rnd.uniform(0.6, 1.6), rnd.uniform(0, 6.28), rnd.uniform(-0.3, 0.3)};
        auto a = random_sample(), b = random_sample();
        const wind::Vec3 w0{rnd.uniform(-0.5, 0.5), rnd.uniform(-0.5, 0.5), rnd.uniform(-0.1, 0.1)};
        a.w = b.w = w0;
        const double alpha = rnd.uniform(-2, 2), beta = rnd.uniform(-2, 2);
        wind::WindSample mix;
        mix.w = w0;
        for (int i = 0; i < 3; ++i) {
            mix.dt_partials[i] = alpha * a.dt_partials[i] + beta * b.dt_partials[i];
            for (int j = 0; j < 3; ++j) mix.grad[i][j] = alpha * a.grad[i][j] + beta * b.grad[i][j];
        }
        const auto ra = dynamics::wind_relative_rates(s, a), rb = dynamics::wind_relative_rates(s, b);
        const auto rm = dynamics::wind_relative_rates(s, mix);
        EXPECT_NEAR(rm.w_v_rate, alpha * ra.w_v_rate + beta * rb.w_v_rate, 1e-13);
        EXPECT_NEAR(rm.w_psi_rate, alpha * ra.w_psi_rate + beta * rb.w_psi_rate, 1e-13);
        EXPECT_NEAR(rm.w_gamma_rate, alpha * ra.w_gamma_rate + beta * rb.w_gamma_rate, 1e-13);
    }
}

TEST(WindRates, LevelFormProperty) {
    const auto r = checks::check_level_wind_rate({33, 1000});
    EXPECT_TRUE(r.passed) << r.worst;
}
