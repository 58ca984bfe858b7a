#include "windguide/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "windguide/errors.hpp"

namespace windguide::dynamics {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw DomainError(std::string(name) + " must be positive, got " + std::to_string(value));
    }
}

}  // namespace

void PhysicalUavParams::validate() const {
    require_positive(mass, "mass");
    require_positive(wing_area, "wing_area");
    require_positive(c_d0, "c_d0");
    require_positive(e_max, "e_max");
    if (!(c_l_min >= 0.0 && c_l_min < c_l_max)) throw DomainError("require 0 <= c_l_min < c_l_max");
    if (!(mu_max > 0.0 && mu_max < std::numbers::pi / 2)) throw DomainError("require 0 < mu_max < pi/2");
    if (!(v_min > 0.0 && v_min < v_max)) throw DomainError("require 0 < v_min < v_max");
    if (!(p_min < p_max)) throw DomainError("require p_min < p_max");
}

PhysicalUavParams scan_eagle_params() {
    PhysicalUavParams p;
    p.mass = 20.0;
    p.wing_area = 0.55;
    p.c_d0 = 0.03;
    p.e_max = 12.0;
    p.p_max = 1400.0;
    p.p_min = 0.0;
    p.v_max = 41.0;
    p.v_min = 20.0;
    p.c_l_max = 1.5;
    p.c_l_min = 0.0;
    p.mu_max = 40.0 * std::numbers::pi / 180.0;
    return p;
}

NormContext build_norm_context(const PhysicalUavParams& params, double v_n, double rho_air, double g) {
    require_positive(v_n, "v_n");
    require_positive(rho_air, "rho_air");
    require_positive(g, "g");
    params.validate();

    NormContext ctx;
    ctx.v_n = v_n;
    ctx.g = g;
    ctx.rho_air = rho_air;
    ctx.mass = params.mass;
    ctx.rho_bar = rho_air * params.wing_area * v_n * v_n / (2.0 * params.mass * g);
    ctx.k_induced = 1.0 / (4.0 * params.c_d0 * params.e_max * params.e_max);
    ctx.c_d0 = params.c_d0;
    ctx.t_n = v_n / g;
    ctx.length_scale = v_n * v_n / g;
    ctx.power_scale = params.mass * g * v_n;

    ctx.limits.v_bar_min = params.v_min / v_n;
    ctx.limits.v_bar_max = params.v_max / v_n;
    ctx.limits.p_bar_min = params.p_min / ctx.power_scale;
    ctx.limits.p_bar_max = params.p_max / ctx.power_scale;
    ctx.limits.c_l_min = params.c_l_min;
    ctx.limits.c_l_max = params.c_l_max;
    ctx.limits.mu_max = params.mu_max;
    return ctx;
}

State advance(const State& s, const StateRate& r, double dt) {
    return {s.v_bar + dt * r.v_bar, s.psi + dt * r.psi,     s.gamma + dt * r.gamma,
            s.x_bar + dt * r.x_bar, s.y_bar + dt * r.y_bar, s.h_bar + dt * r.h_bar};
}

double wrap_two_pi(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(angle, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    return a;
}

double wrap_pi(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(angle, two_pi);
    if (a > std::numbers::pi) a -= two_pi;
    if (a <= -std::numbers::pi) a += two_pi;
    return a;
}

WindRates wind_relative_rates(const State& state, const wind::WindSample& wind) {
    const double sp = std::sin(state.psi), cp = std::cos(state.psi);
    const double sg = std::sin(state.gamma), cg = std::cos(state.gamma);

    const wind::Vec3 ground{state.v_bar * cg * sp + wind.w[0], state.v_bar * cg * cp + wind.w[1],
                            state.v_bar * sg + wind.w[2]};
    wind::Vec3 wdot{};
    for (int i = 0; i < 3; ++i) {
        wdot[i] = wind.grad[i][0] * ground[0] + wind.grad[i][1] * ground[1] + wind.grad[i][2] * ground[2] +
                  wind.dt_partials[i];
    }

    WindRates r;
    r.w_v_rate = wdot[0] * cg * sp + wdot[1] * cg * cp + wdot[2] * sg;
    r.w_psi_rate = wdot[0] * cp - wdot[1] * sp;
    r.w_gamma_rate = wdot[0] * sg * sp + wdot[1] * sg * cp - wdot[2] * cg;
    return r;
}

double level_flight_wind_v_rate(double v_bar, double psi, const wind::WindSample& wind) {
    const double sp = std::sin(psi), cp = std::cos(psi);
    const auto& g = wind.grad;
    const double wx = wind.w[0], wy = wind.w[1];
    return (g[0][1] + g[1][0]) * v_bar * sp * cp + g[0][0] * v_bar * sp * sp + g[1][1] * v_bar * cp * cp +
           (wx * g[0][0] + wy * g[0][1] + wind.dt_partials[0]) * sp +
           (wx * g[1][0] + wy * g[1][1] + wind.dt_partials[1]) * cp;
}

StateRate state_derivative(const State& state, const Controls& controls, const wind::WindSample& wind,
                           const NormContext& ctx) {
    if (!(state.v_bar >= kAirspeedGuard)) {
        throw SingularStateError("airspeed " + std::to_string(state.v_bar) + " below guard " +
                                 std::to_string(kAirspeedGuard));
    }
    const double cg = std::cos(state.gamma);
    if (!(cg > 1e-9)) throw SingularStateError("flight path angle at +-90 deg");

    const double v = state.v_bar;
    const double sg = std::sin(state.gamma);
    const double sp = std::sin(state.psi), cp = std::cos(state.psi);
    const WindRates wr = wind_relative_rates(state, wind);

    const double drag = ctx.rho_bar * v * v * (ctx.c_d0 + ctx.k_induced * controls.c_l * controls.c_l);

    StateRate r;
    r.v_bar = controls.p_bar / v - drag - sg - wr.w_v_rate;
    r.psi = ctx.rho_bar * v * controls.c_l * std::sin(controls.mu) / cg - wr.w_psi_rate / (v * cg);
    r.gamma = ctx.rho_bar * v * controls.c_l * std::cos(controls.mu) - cg / v + wr.w_gamma_rate / v;
    r.x_bar = v * cg * sp + wind.w[0];
    r.y_bar = v * cg * cp + wind.w[1];
    r.h_bar = v * sg + wind.w[2];
    return r;
}

double instantaneous_power(const Controls& controls, const State& /*state*/) {
    // controls carry power directly; T_bar * V_bar == p_bar
    return controls.p_bar;
}

double level_flight_power(double v_bar, const NormContext& ctx) {
    return ctx.rho_bar * v_bar * v_bar * v_bar * ctx.c_d0 + ctx.k_induced / (ctx.rho_bar * v_bar);
}

Controls level_trim_controls(double v_bar, const NormContext& ctx) {
    Controls c;
    c.c_l = 1.0 / (ctx.rho_bar * v_bar * v_bar);
    c.mu = 0.0;
    c.p_bar = level_flight_power(v_bar, ctx);
    return c;
}

}  // namespace windguide::dynamics
