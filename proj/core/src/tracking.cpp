#include "windguide/tracking.hpp"

#include <algorithm>
#include <cmath>

#include "windguide/errors.hpp"

namespace windguide::tracking {

using dynamics::Controls;
using dynamics::NormContext;
using dynamics::State;
using dynamics::WindRates;

void TrackingGains::validate() const {
    if (!(k_v > 0.0 && k_psi > 0.0 && k_gamma > 0.0)) throw DomainError("tracking gains must be positive");
}

double thrust_law(const State& state, const WindRates& rates, const Commands& cmd, const TrackingGains& gains,
                  const NormContext& ctx, double c_l) {
    const double v = state.v_bar;
    return -gains.k_v * ctx.t_n * (v - cmd.v_bar_c) +
           ctx.rho_bar * v * v * (ctx.c_d0 + ctx.k_induced * c_l * c_l) + std::sin(state.gamma) + rates.w_v_rate;
}

BankAndLift bank_and_lift_law(const State& state, const WindRates& rates, const Commands& cmd,
                              const TrackingGains& gains, const NormContext& ctx, double previous_mu) {
    const double v = state.v_bar;
    const double cg = std::cos(state.gamma);
    const double heading_error = dynamics::wrap_pi(state.psi - cmd.psi_c);

    // lateral and vertical components of the demanded normalized lift rho V^2 C_L
    const double lateral = rates.w_psi_rate - v * cg * gains.k_psi * ctx.t_n * heading_error;
    const double vertical = cg - rates.w_gamma_rate - v * gains.k_gamma * ctx.t_n * (state.gamma - cmd.gamma_c);

    BankAndLift out;
    out.c_l = std::hypot(lateral, vertical) / (ctx.rho_bar * v * v);
    if (lateral == 0.0 && vertical == 0.0) {
        out.mu = previous_mu;
        out.degenerate = true;
    } else {
        out.mu = std::atan2(lateral, vertical);
    }
    return out;
}

SaturatedControls saturate(const Controls& controls, const NormContext& ctx) {
    const auto& lim = ctx.limits;
    SaturatedControls out{controls, {}};
    auto& c = out.controls;
    auto& f = out.flags;

    if (c.c_l < lim.c_l_min) {
        c.c_l = lim.c_l_min;
        f.lift_low = true;
    } else if (c.c_l > lim.c_l_max) {
        c.c_l = lim.c_l_max;
        f.lift_high = true;
    }
    if (std::abs(c.mu) > lim.mu_max) {
        c.mu = std::copysign(lim.mu_max, c.mu);
        f.bank = true;
    }
    if (c.p_bar < lim.p_bar_min) {
        c.p_bar = lim.p_bar_min;
        f.power_low = true;
    } else if (c.p_bar > lim.p_bar_max) {
        c.p_bar = lim.p_bar_max;
        f.power_high = true;
    }
    return out;
}

ClosedLoopControls compute_controls(const State& state, const wind::WindSample& wind, const Commands& cmd,
                                    const TrackingGains& gains, const NormContext& ctx, double previous_mu) {
    const WindRates rates = dynamics::wind_relative_rates(state, wind);
    const BankAndLift bl = bank_and_lift_law(state, rates, cmd, gains, ctx, previous_mu);

    // Lift and bank first so the thrust law cancels the drag actually produced.
    Controls c{0.0, bl.c_l, bl.mu};
    SaturatedControls lift = saturate(c, ctx);
    c = lift.controls;

    const double thrust = thrust_law(state, rates, cmd, gains, ctx, c.c_l);
    c.p_bar = thrust * state.v_bar;
    SaturatedControls full = saturate(c, ctx);

    ClosedLoopControls out;
    out.controls = full.controls;
    out.flags = full.flags;
    out.flags.lift_low = lift.flags.lift_low;
    out.flags.lift_high = lift.flags.lift_high;
    out.flags.bank = lift.flags.bank;
    out.degenerate_bank = bl.degenerate;
    return out;
}

}  // namespace windguide::tracking
