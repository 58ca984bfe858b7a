#include "windguide_checks/property_suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include "windguide/errors.hpp"
#include "windguide/tracking.hpp"
#include "windguide/windfield.hpp"
#include "windguide_checks/oracles.hpp"

namespace windguide::checks {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double rel_err(double analytic, double reference) {
    return std::abs(analytic - reference) / std::max(1.0, std::abs(analytic));
}

void finish(CheckResult& r, const Timer& t) {
    r.passed = r.worst <= r.tolerance;
    r.seconds = t.seconds();
}

double q2d(const guidance::InsituWind& w, double dt) {
    const double d = 2.0 / dt;
    return (d - w.g_xx) * (d - w.g_yy) - w.g_xy * w.g_yx;
}

}  // namespace

guidance::InsituWind Sampler::insitu_wind(double wind_abs, double grad_abs) {
    guidance::InsituWind w;
    w.w_x0 = uniform(-wind_abs, wind_abs);
    w.w_y0 = uniform(-wind_abs, wind_abs);
    w.g_xx = uniform(-grad_abs, grad_abs);
    w.g_xy = uniform(-grad_abs, grad_abs);
    w.g_yx = uniform(-grad_abs, grad_abs);
    w.g_yy = uniform(-grad_abs, grad_abs);
    w.tp_x = uniform(-grad_abs, grad_abs);
    w.tp_y = uniform(-grad_abs, grad_abs);
    return w;
}

const dynamics::NormContext& default_context() {
    static const dynamics::NormContext ctx = dynamics::build_norm_context(dynamics::scan_eagle_params());
    return ctx;
}

CheckResult check_power_gradients(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "power_gradients_vs_finite_difference";
    r.tolerance = 1e-6;
    const auto& ctx = default_context();
    Sampler s(opt.seed);
    while (r.draws < opt.draws) {
        const double v0 = s.uniform(0.6, 1.6);
        const double psi0 = s.uniform(0.0, kTwoPi);
        const auto w = s.insitu_wind(0.5, 0.2);
        const double dt = s.uniform(1.0, 6.0);
        try {
            const double gv = guidance::airspeed_gradient(v0, psi0, w, dt, ctx);
            const double gp = guidance::heading_gradient(v0, psi0, w, dt, ctx);
            const double fv = fd_power_wrt_airspeed(v0, psi0, w, dt, ctx);
            const double fp = fd_power_wrt_heading(v0, psi0, w, dt, ctx);
            r.worst = std::max({r.worst, rel_err(gv, fv), rel_err(gp, fp)});
            ++r.draws;
        } catch (const SingularProjectionError&) {
            ++r.redraws;
        }
    }
    finish(r, timer);
    return r;
}

CheckResult check_position_projection(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "position_projection_vs_fixed_point";
    r.tolerance = 1e-10;
    Sampler s(opt.seed + 1);
    while (r.draws < opt.draws) {
        const double v0 = s.uniform(0.6, 1.6);
        const double psi0 = s.uniform(0.0, kTwoPi);
        const double dv = s.uniform(-0.1, 0.1);
        const double dpsi = s.uniform(-0.6, 0.6);
        const auto w = s.insitu_wind(0.5, 0.2);
        const double dt = s.uniform(1.0, 6.0);
        // The plain iteration only converges for a contractive map.
        if (std::abs(q2d(w, dt)) <= 1e-3 || trapezoid_iteration_radius(w, dt) >= 0.9) {
            ++r.redraws;
            continue;
        }
        const auto fp = fixed_point_position_change(v0, psi0, dv, dpsi, w, dt);
        if (!fp) {
            r.worst = std::numeric_limits<double>::infinity();
            r.detail = "fixed-point iteration failed to converge";
            break;
        }
        const auto cf = guidance::projected_position_change(v0, psi0, dv, dpsi, w, dt);
        r.worst = std::max({r.worst, rel_err(cf.dx, fp->dx), rel_err(cf.dy, fp->dy)});
        ++r.draws;
    }
    finish(r, timer);
    return r;
}

CheckResult check_wind_gradients(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "wind_gradients_vs_finite_difference";
    r.tolerance = 1e-6;
    const double v_n = default_context().v_n;
    Sampler s(opt.seed + 2);
    constexpr double h = 1e-5;
    for (; r.draws < opt.draws; ++r.draws) {
        wind::WindFieldSpec spec;
        spec.w_m0 = s.uniform(0.0, 20.0);
        spec.a_x = s.uniform(-0.5, 0.5);
        spec.a_y = s.uniform(-0.5, 0.5);
        spec.omega_mx = std::pow(10.0, s.uniform(-2.0, 1.0));
        spec.omega_my = std::pow(10.0, s.uniform(-2.0, 1.0));
        spec.psi_w = s.uniform(0.0, kTwoPi);
        const wind::SinusoidalWindField field(spec, v_n);
        const wind::Position p{s.uniform(-50.0, 50.0), s.uniform(-50.0, 50.0), s.uniform(0.0, 5.0)};
        const double t = s.uniform(0.0, 250.0);
        const auto a = field.sample(p, t);
        for (int j = 0; j < 3; ++j) {
            wind::Position up = p, dn = p;
            (j == 0 ? up.x : j == 1 ? up.y : up.h) += h;
            (j == 0 ? dn.x : j == 1 ? dn.y : dn.h) -= h;
            const auto su = field.sample(up, t), sd = field.sample(dn, t);
            for (int i = 0; i < 3; ++i) r.worst = std::max(r.worst, rel_err(a.grad[i][j], (su.w[i] - sd.w[i]) / (2 * h)));
        }
        const auto tu = field.sample(p, t + h), td = field.sample(p, t - h);
        for (int i = 0; i < 3; ++i) r.worst = std::max(r.worst, rel_err(a.dt_partials[i], (tu.w[i] - td.w[i]) / (2 * h)));
    }
    finish(r, timer);
    return r;
}

CheckResult check_level_wind_rate(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "level_wind_rate_matches_general_form";
    r.tolerance = 1e-12;
    Sampler s(opt.seed + 3);
    for (; r.draws < opt.draws; ++r.draws) {
        dynamics::State st;
        st.v_bar = s.uniform(0.6, 1.6);
        st.psi = s.uniform(0.0, kTwoPi);
        wind::WindSample w;
        w.w = {s.uniform(-0.5, 0.5), s.uniform(-0.5, 0.5), 0.0};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 3; ++j) w.grad[i][j] = s.uniform(-0.2, 0.2);
            w.dt_partials[i] = s.uniform(-0.2, 0.2);
        }
        const double general = dynamics::wind_relative_rates(st, w).w_v_rate;
        const double level = dynamics::level_flight_wind_v_rate(st.v_bar, st.psi, w);
        r.worst = std::max(r.worst, std::abs(general - level));
    }
    finish(r, timer);
    return r;
}

CheckResult check_closed_loop_linearization(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "closed_loop_first_order_channels";
    r.tolerance = 1e-10;
    const auto& ctx = default_context();
    const tracking::TrackingGains gains;
    Sampler s(opt.seed + 4);
    const double v_star = guidance::optimal_loiter_speed(ctx);
    while (r.draws < opt.draws) {
        dynamics::State st;
        st.v_bar = v_star * s.uniform(0.9, 1.2);
        st.psi = s.uniform(0.0, kTwoPi);
        st.gamma = s.uniform(-0.1, 0.1);
        st.x_bar = s.uniform(-20.0, 20.0);
        st.y_bar = s.uniform(-20.0, 20.0);
        wind::WindSample w;
        for (int i = 0; i < 3; ++i) {
            w.w[i] = s.uniform(-0.3, 0.3);
            w.dt_partials[i] = s.uniform(-0.02, 0.02);
            for (int j = 0; j < 3; ++j) w.grad[i][j] = s.uniform(-0.05, 0.05);
        }
        const tracking::Commands cmd{st.v_bar + s.uniform(-0.05, 0.05), st.psi + s.uniform(-0.3, 0.3),
                                     s.uniform(-0.05, 0.05)};
        const auto c = tracking::compute_controls(st, w, cmd, gains, ctx);
        if (c.flags.any()) {
            ++r.redraws;
            continue;
        }
        const auto rate = dynamics::state_derivative(st, c.controls, w, ctx);
        const double ev = rate.v_bar + gains.k_v * ctx.t_n * (st.v_bar - cmd.v_bar_c);
        const double ep = rate.psi + gains.k_psi * ctx.t_n * dynamics::wrap_pi(st.psi - cmd.psi_c);
        const double eg = rate.gamma + gains.k_gamma * ctx.t_n * (st.gamma - cmd.gamma_c);
        r.worst = std::max({r.worst, std::abs(ev), std::abs(ep), std::abs(eg)});
        ++r.draws;
    }
    finish(r, timer);
    return r;
}

CheckResult check_saturation(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "saturation_in_range_and_idempotent";
    r.tolerance = 0.0;
    const auto& ctx = default_context();
    const auto& lim = ctx.limits;
    Sampler s(opt.seed + 5);
    for (; r.draws < opt.draws; ++r.draws) {
        const dynamics::Controls raw{s.uniform(-1.0, 1.0), s.uniform(-1.0, 3.0), s.uniform(-3.0, 3.0)};
        const auto once = tracking::saturate(raw, ctx).controls;
        const auto twice = tracking::saturate(once, ctx);
        double bad = 0.0;
        if (once.c_l < lim.c_l_min || once.c_l > lim.c_l_max) bad += 1.0;
        if (std::abs(once.mu) > lim.mu_max) bad += 1.0;
        if (once.p_bar < lim.p_bar_min || once.p_bar > lim.p_bar_max) bad += 1.0;
        if (twice.flags.any() || twice.controls.c_l != once.c_l || twice.controls.mu != once.mu ||
            twice.controls.p_bar != once.p_bar)
            bad += 1.0;
        r.worst = std::max(r.worst, bad);
    }
    finish(r, timer);
    return r;
}

CheckResult check_adjustments(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "adjustment_structure_and_boxes";
    r.tolerance = 0.0;
    const auto& ctx = default_context();
    Sampler s(opt.seed + 6);
    std::size_t failures = 0;
    std::ostringstream first;
    for (; r.draws < opt.draws; ++r.draws) {
        guidance::GuidanceLimits lim;
        lim.dt_bar = s.uniform(1.0, 6.0);
        lim.dv_max = s.uniform(0.01, 0.1);
        lim.dpsi_max = s.uniform(0.01, 0.5);
        lim.v_bar_min = s.uniform(0.8, 1.0);
        lim.v_bar_max = s.uniform(1.2, 1.6);
        if (s.integer(0, 1) == 1) {
            lim.psi_min = s.uniform(-1.0, 2.0);
            lim.psi_max = lim.psi_min + s.uniform(0.5, 4.0);
        }
        lim.epsilon = std::pow(10.0, s.uniform(-6.0, -1.0));
        lim.eta = s.uniform(0.1, 1.0);
        const double v0 = s.uniform(lim.v_bar_min, lim.v_bar_max);
        const double psi0 = std::isfinite(lim.psi_min) ? s.uniform(lim.psi_min, lim.psi_max) : s.uniform(0.0, kTwoPi);
        const auto w = s.insitu_wind(0.5, 0.1);
        const int kind = s.integer(0, 3);
        const auto strategy = static_cast<guidance::StrategyKind>(kind);
        const auto a = guidance::adjust(strategy, v0, psi0, w, lim, ctx);

        const bool tune_speed = kind == 1 || kind == 3;
        const bool tune_heading = kind == 2 || kind == 3;
        bool ok = !a.infeasible_box;
        ok = ok && (tune_speed || a.dv == 0.0) && (tune_heading || a.dpsi == 0.0);
        ok = ok && guidance::airspeed_step_box(v0, lim).contains(a.dv) && guidance::heading_step_box(psi0, lim).contains(a.dpsi);
        ok = ok && std::abs(a.dv) <= lim.eta * lim.dv_max && std::abs(a.dpsi) <= lim.eta * lim.dpsi_max;
        if (!a.singular) {
            if (std::abs(a.airspeed_gradient) < lim.epsilon) ok = ok && a.dv == 0.0;
            if (std::abs(a.heading_gradient) < lim.epsilon) ok = ok && a.dpsi == 0.0;
            // steps never point up the gradient
            ok = ok && a.dv * a.airspeed_gradient <= 0.0 && a.dpsi * a.heading_gradient <= 0.0;
        }
        if (!ok && failures++ == 0) first << "strategy " << kind << " v0 " << v0 << " psi0 " << psi0;
    }
    r.worst = static_cast<double>(failures);
    r.detail = first.str();
    finish(r, timer);
    return r;
}

CheckResult check_loiter_speed(const SuiteOptions& opt) {
    Timer timer;
    CheckResult r;
    r.name = "loiter_speed_vs_scalar_minimization";
    r.tolerance = 1e-8;
    Sampler s(opt.seed + 7);
    const std::size_t n = std::max<std::size_t>(1, opt.draws / 50);
    for (; r.draws < n; ++r.draws) {
        auto p = dynamics::scan_eagle_params();
        p.mass = s.uniform(5.0, 50.0);
        p.wing_area = s.uniform(0.2, 2.0);
        p.c_d0 = s.uniform(0.01, 0.06);
        p.e_max = s.uniform(6.0, 25.0);
        const auto ctx = dynamics::build_norm_context(p, s.uniform(10.0, 40.0));
        const double closed = guidance::optimal_loiter_speed(ctx);
        r.worst = std::max(r.worst, std::abs(closed - numeric_loiter_speed(ctx)) / closed);
        // K is defined from E_max; the numeric L/D maximum must give it back
        r.worst = std::max(r.worst, std::abs(numeric_max_lift_to_drag(ctx.c_d0, ctx.k_induced) - p.e_max) / p.e_max);
    }
    finish(r, timer);
    return r;
}

std::vector<CheckResult> run_property_suite(const SuiteOptions& opt) {
    return {check_power_gradients(opt),     check_position_projection(opt),       check_wind_gradients(opt),
            check_level_wind_rate(opt),     check_closed_loop_linearization(opt), check_saturation(opt),
            check_adjustments(opt),         check_loiter_speed(opt)};
}

}  // namespace windguide::checks
