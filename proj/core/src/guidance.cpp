#include "windguide/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "windguide/errors.hpp"

namespace windguide::guidance {

using dynamics::NormContext;

InsituWind InsituWind::from_sample(const wind::WindSample& s) {
    InsituWind w;
    w.w_x0 = s.w[0];
    w.w_y0 = s.w[1];
    w.g_xx = s.grad[0][0];
    w.g_xy = s.grad[0][1];
    w.g_yx = s.grad[1][0];
    w.g_yy = s.grad[1][1];
    w.tp_x = s.dt_partials[0];
    w.tp_y = s.dt_partials[1];
    return w;
}

void GuidanceLimits::validate() const {
    if (!(dv_max > 0.0)) throw DomainError("dv_max must be positive");
    if (!(dpsi_max > 0.0)) throw DomainError("dpsi_max must be positive");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("eta must lie in (0, 1]");
    if (!(dt_bar > 0.0)) throw DomainError("dt_bar must be positive");
    if (!(v_bar_min > 0.0 && v_bar_min < v_bar_max)) throw DomainError("require 0 < v_bar_min < v_bar_max");
    if (!(psi_min < psi_max)) throw DomainError("require psi_min < psi_max");
}

std::string_view to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::Reference: return "reference";
        case StrategyKind::AirspeedOnly: return "airspeed";
        case StrategyKind::HeadingOnly: return "heading";
        case StrategyKind::Combined: return "combined";
    }
    return "unknown";
}

StrategyKind strategy_from_string(std::string_view name) {
    if (name == "reference") return StrategyKind::Reference;
    if (name == "airspeed" || name == "airspeed_only") return StrategyKind::AirspeedOnly;
    if (name == "heading" || name == "heading_only") return StrategyKind::HeadingOnly;
    if (name == "combined") return StrategyKind::Combined;
    throw DomainError("unknown strategy '" + std::string(name) + "'");
}

double optimal_loiter_speed(const NormContext& ctx) {
    return std::pow(ctx.k_induced / (3.0 * ctx.rho_bar * ctx.rho_bar * ctx.c_d0), 0.25);
}

namespace {

// Linear system M [dx, dy]^T = [B1, B2]^T with M = 2/dt I - G.
struct ProjectionSystem {
    double a = 0.0;  // 2/dt
    double q2d = 0.0;

    ProjectionSystem(const InsituWind& w, double dt_bar) : a(2.0 / dt_bar) {
        q2d = a * a - a * (w.g_xx + w.g_yy) + (w.g_xx * w.g_yy - w.g_xy * w.g_yx);
        if (!(std::abs(q2d) >= kSingularQ2d)) {
            throw SingularProjectionError("position-change system singular, Q_2D = " + std::to_string(q2d), q2d);
        }
    }

    // Applies M^{-1} to a right-hand side.
    void solve(const InsituWind& w, double b1, double b2, double& dx, double& dy) const {
        dx = ((a - w.g_yy) * b1 + w.g_xy * b2) / q2d;
        dy = (w.g_yx * b1 + (a - w.g_xx) * b2) / q2d;
    }
};

double ground_ref_terms_rate(double v, double s, double c, const InsituWind& w, const ProjectedWind& pw) {
    return (w.g_xy + w.g_yx) * v * s * c + w.g_xx * v * s * s + w.g_yy * v * c * c +
           pw.w_x * (w.g_xx * s + w.g_yx * c) + pw.w_y * (w.g_xy * s + w.g_yy * c) + w.tp_x * s + w.tp_y * c;
}

}  // namespace

PositionChange projected_position_change(double v0, double psi0, double dv, double dpsi, const InsituWind& wind,
                                         double dt_bar) {
    const ProjectionSystem sys(wind, dt_bar);
    const double v1 = v0 + dv;
    const double psi1 = psi0 + dpsi;
    const double b1 = v0 * std::sin(psi0) + v1 * std::sin(psi1) + 2.0 * wind.w_x0 + wind.tp_x * dt_bar;
    const double b2 = v0 * std::cos(psi0) + v1 * std::cos(psi1) + 2.0 * wind.w_y0 + wind.tp_y * dt_bar;
    PositionChange out;
    sys.solve(wind, b1, b2, out.dx, out.dy);
    out.q2d = sys.q2d;
    return out;
}

ProjectedWind projected_wind(const PositionChange& change, const InsituWind& w, double dt_bar) {
    return {w.w_x0 + w.g_xx * change.dx + w.g_xy * change.dy + w.tp_x * dt_bar,
            w.w_y0 + w.g_yx * change.dx + w.g_yy * change.dy + w.tp_y * dt_bar};
}

double projected_wind_rate(double v0, double psi0, double dv, double dpsi, const InsituWind& wind, double dt_bar) {
    const PositionChange change = projected_position_change(v0, psi0, dv, dpsi, wind, dt_bar);
    const ProjectedWind pw = projected_wind(change, wind, dt_bar);
    const double psi1 = psi0 + dpsi;
    return ground_ref_terms_rate(v0 + dv, std::sin(psi1), std::cos(psi1), wind, pw);
}

double projected_power(double v0, double psi0, double dv, double dpsi, const InsituWind& wind, double dt_bar,
                       const NormContext& ctx) {
    const double v1 = v0 + dv;
    if (!(v1 > 0.0)) throw DomainError("projected airspeed must be positive, got " + std::to_string(v1));
    const double wv_rate = projected_wind_rate(v0, psi0, dv, dpsi, wind, dt_bar);
    return ctx.rho_bar * v1 * v1 * v1 * ctx.c_d0 + ctx.k_induced / (ctx.rho_bar * v1) + v1 * wv_rate;
}

double airspeed_gradient(double v0, double psi0, const InsituWind& w, double dt_bar, const NormContext& ctx) {
    const ProjectionSystem sys(w, dt_bar);
    const double s = std::sin(psi0), c = std::cos(psi0);

    // position and projected-wind sensitivities to dV_c (dB1/dV = sin, dB2/dV = cos)
    double dx_dv = 0.0, dy_dv = 0.0;
    sys.solve(w, s, c, dx_dv, dy_dv);
    const double dwx_dv = w.g_xx * dx_dv + w.g_xy * dy_dv;
    const double dwy_dv = w.g_yx * dx_dv + w.g_yy * dy_dv;

    const PositionChange change = projected_position_change(v0, psi0, 0.0, 0.0, w, dt_bar);
    const ProjectedWind pw = projected_wind(change, w, dt_bar);

    const double v0sq = v0 * v0;
    return 3.0 * ctx.rho_bar * ctx.c_d0 * v0sq - ctx.k_induced / (ctx.rho_bar * v0sq) +
           // 2 V0 (g_xy + g_yx) s c + 2 V0 g_xx s^2 + 2 V0 g_yy c^2, written without tan/cot
           2.0 * v0 * ((w.g_xy + w.g_yx) * s * c + w.g_xx * s * s + w.g_yy * c * c) +
           (w.g_xx * s + w.g_yx * c) * (pw.w_x + v0 * dwx_dv) + (w.g_xy * s + w.g_yy * c) * (pw.w_y + v0 * dwy_dv) +
           w.tp_x * s + w.tp_y * c;
}

double heading_gradient(double v0, double psi0, const InsituWind& w, double dt_bar, const NormContext& /*ctx*/) {
    const ProjectionSystem sys(w, dt_bar);
    const double s = std::sin(psi0), c = std::cos(psi0);

    // dB1/dPsi = V0 cos, dB2/dPsi = -V0 sin
    double dx_dpsi = 0.0, dy_dpsi = 0.0;
    sys.solve(w, v0 * c, -v0 * s, dx_dpsi, dy_dpsi);
    const double dwx_dpsi = w.g_xx * dx_dpsi + w.g_xy * dy_dpsi;
    const double dwy_dpsi = w.g_yx * dx_dpsi + w.g_yy * dy_dpsi;

    const PositionChange change = projected_position_change(v0, psi0, 0.0, 0.0, w, dt_bar);
    const ProjectedWind pw = projected_wind(change, w, dt_bar);

    const double c2 = std::cos(2.0 * psi0), s2 = std::sin(2.0 * psi0);
    const double dwv_dpsi = (w.g_xy + w.g_yx) * v0 * c2 + (w.g_xx - w.g_yy) * v0 * s2 +
                            dwx_dpsi * (w.g_xx * s + w.g_yx * c) + dwy_dpsi * (w.g_xy * s + w.g_yy * c) +
                            pw.w_x * (w.g_xx * c - w.g_yx * s) + pw.w_y * (w.g_xy * c - w.g_yy * s) +
                            w.tp_x * c - w.tp_y * s;
    return v0 * dwv_dpsi;
}

Interval airspeed_step_box(double v0, const GuidanceLimits& limits) {
    return {std::max(-limits.dv_max, limits.v_bar_min - v0), std::min(limits.dv_max, limits.v_bar_max - v0)};
}

Interval heading_step_box(double psi0, const GuidanceLimits& limits) {
    return {std::max(-limits.dpsi_max, limits.psi_min - psi0), std::min(limits.dpsi_max, limits.psi_max - psi0)};
}

namespace {

// Bang-bang rule with deadband: the unclipped step is scaled by eta, then clipped to the box.
double first_order_step(double gradient, double max_step, const Interval& box, double epsilon, double eta,
                        bool& infeasible) {
    if (std::abs(gradient) < epsilon) return 0.0;
    const double step = gradient >= epsilon ? -eta * max_step : eta * max_step;
    if (box.lo > box.hi) {
        // Operating point is outside the box by more than one increment: move toward it at full rate.
        infeasible = true;
        return box.hi < 0.0 ? -max_step : max_step;
    }
    return std::clamp(step, box.lo, box.hi);
}

}  // namespace

Adjustment adjust(StrategyKind strategy, double v0, double psi0, const InsituWind& wind,
                  const GuidanceLimits& limits, const NormContext& ctx) {
    Adjustment out;
    if (strategy == StrategyKind::Reference) return out;

    const bool tune_speed = strategy == StrategyKind::AirspeedOnly || strategy == StrategyKind::Combined;
    const bool tune_heading = strategy == StrategyKind::HeadingOnly || strategy == StrategyKind::Combined;
    try {
        if (tune_speed) out.airspeed_gradient = airspeed_gradient(v0, psi0, wind, limits.dt_bar, ctx);
        if (tune_heading) out.heading_gradient = heading_gradient(v0, psi0, wind, limits.dt_bar, ctx);
    } catch (const SingularProjectionError&) {
        out.singular = true;
        out.airspeed_gradient = 0.0;
        out.heading_gradient = 0.0;
        return out;
    }

    if (tune_speed) {
        out.dv = first_order_step(out.airspeed_gradient, limits.dv_max, airspeed_step_box(v0, limits),
                                  limits.epsilon, limits.eta, out.infeasible_box);
    }
    if (tune_heading) {
        out.dpsi = first_order_step(out.heading_gradient, limits.dpsi_max, heading_step_box(psi0, limits),
                                    limits.epsilon, limits.eta, out.infeasible_box);
    }
    return out;
}

LimitBounds guidance_limit_bounds(const dynamics::State& state, const NormContext& ctx, double dt_bar) {
    const double v = state.v_bar;
    LimitBounds b;
    b.dv_max_bound = dt_bar * (ctx.limits.p_bar_max / v - ctx.rho_bar * v * v * ctx.c_d0 -
                               ctx.k_induced / (ctx.rho_bar * v * v));
    b.dpsi_max_bound = dt_bar * std::sin(ctx.limits.mu_max) / v;
    return b;
}

}  // namespace windguide::guidance
