#include "windguide/simulator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "windguide/errors.hpp"

namespace windguide::sim {

using dynamics::NormContext;
using dynamics::State;
using dynamics::StateRate;
using tracking::ClosedLoopControls;
using tracking::Commands;

namespace {

struct Evaluation {
    StateRate rate;
    ClosedLoopControls controls;
};

Evaluation evaluate(const State& s, const Commands& cmd, const wind::WindField& field, double t_bar,
                    const NormContext& ctx, const tracking::TrackingGains& gains, double previous_mu) {
    if (!(s.v_bar >= dynamics::kAirspeedGuard)) {
        throw SingularStateError("airspeed " + std::to_string(s.v_bar) + " below guard");
    }
    const wind::WindSample w = field.sample(s.position(), t_bar);
    Evaluation e;
    e.controls = tracking::compute_controls(s, w, cmd, gains, ctx, previous_mu);
    e.rate = dynamics::state_derivative(s, e.controls.controls, w, ctx);
    return e;
}

constexpr double kAuditTolerance = 1e-12;

bool controls_within_limits(const dynamics::Controls& c, const dynamics::NormalizedLimits& lim) {
    return c.c_l >= lim.c_l_min && c.c_l <= lim.c_l_max && std::abs(c.mu) <= lim.mu_max &&
           c.p_bar >= lim.p_bar_min && c.p_bar <= lim.p_bar_max;
}

}  // namespace

StepResult integrate_step(const State& state, const Commands& commands, const wind::WindField& field,
                          double t_bar, const NormContext& ctx, const tracking::TrackingGains& gains, double step,
                          double previous_mu) {
    if (!(step > 0.0)) throw DomainError("integration step must be positive");

    const Evaluation k1 = evaluate(state, commands, field, t_bar, ctx, gains, previous_mu);
    const double mu = k1.controls.controls.mu;
    const Evaluation k2 =
        evaluate(dynamics::advance(state, k1.rate, 0.5 * step), commands, field, t_bar + 0.5 * step, ctx, gains, mu);
    const Evaluation k3 =
        evaluate(dynamics::advance(state, k2.rate, 0.5 * step), commands, field, t_bar + 0.5 * step, ctx, gains, mu);
    const Evaluation k4 =
        evaluate(dynamics::advance(state, k3.rate, step), commands, field, t_bar + step, ctx, gains, mu);

    auto combine = [step](double y, double a, double b, double c, double d) {
        return y + step / 6.0 * (a + 2.0 * b + 2.0 * c + d);
    };
    StepResult out;
    out.state.v_bar = combine(state.v_bar, k1.rate.v_bar, k2.rate.v_bar, k3.rate.v_bar, k4.rate.v_bar);
    out.state.psi =
        dynamics::wrap_two_pi(combine(state.psi, k1.rate.psi, k2.rate.psi, k3.rate.psi, k4.rate.psi));
    out.state.gamma = combine(state.gamma, k1.rate.gamma, k2.rate.gamma, k3.rate.gamma, k4.rate.gamma);
    out.state.x_bar = combine(state.x_bar, k1.rate.x_bar, k2.rate.x_bar, k3.rate.x_bar, k4.rate.x_bar);
    out.state.y_bar = combine(state.y_bar, k1.rate.y_bar, k2.rate.y_bar, k3.rate.y_bar, k4.rate.y_bar);
    out.state.h_bar = combine(state.h_bar, k1.rate.h_bar, k2.rate.h_bar, k3.rate.h_bar, k4.rate.h_bar);
    out.controls = k1.controls;
    out.power = dynamics::instantaneous_power(k1.controls.controls, state);

    if (!(out.state.v_bar >= dynamics::kAirspeedGuard)) {
        throw SingularStateError("airspeed " + std::to_string(out.state.v_bar) + " below guard after step");
    }
    return out;
}

void EpisodeConfig::validate() const {
    if (steps_per_update < 1) throw DomainError("steps_per_update must be >= 1");
    if (num_updates < 1) throw DomainError("num_updates must be >= 1");
    if (!(update_interval_s > 0.0)) throw DomainError("update interval must be positive");
    if (!(initial.v_bar >= dynamics::kAirspeedGuard)) throw DomainError("initial airspeed below guard");
    gains.validate();
    if (strategy != guidance::StrategyKind::Reference) {
        guidance::GuidanceLimits l = limits;
        l.dt_bar = 1.0;  // checked separately from update_interval_s
        l.validate();
    }
}

void SaturationCounters::add(const ClosedLoopControls& c) {
    ++samples;
    power_low += c.flags.power_low;
    power_high += c.flags.power_high;
    lift_low += c.flags.lift_low;
    lift_high += c.flags.lift_high;
    bank += c.flags.bank;
    degenerate_bank += c.degenerate_bank;
}

void SaturationCounters::merge(const SaturationCounters& o) {
    samples += o.samples;
    power_low += o.power_low;
    power_high += o.power_high;
    lift_low += o.lift_low;
    lift_high += o.lift_high;
    bank += o.bank;
    degenerate_bank += o.degenerate_bank;
}

void ConstraintAudit::merge(const ConstraintAudit& o) {
    adjustments_checked += o.adjustments_checked;
    adjustment_violations += o.adjustment_violations;
    controls_checked += o.controls_checked;
    control_violations += o.control_violations;
}

State initial_trim_state(double psi0, const NormContext& ctx, double h_bar0) {
    State s;
    s.v_bar = guidance::optimal_loiter_speed(ctx);
    s.psi = dynamics::wrap_two_pi(psi0);
    s.gamma = 0.0;
    s.h_bar = h_bar0;
    return s;
}

EpisodeResult run_episode(const EpisodeConfig& cfg, const wind::WindField& field, const NormContext& ctx) {
    cfg.validate();

    const double dt_bar = ctx.to_t_bar(cfg.update_interval_s);
    const double h = dt_bar / cfg.steps_per_update;
    guidance::GuidanceLimits limits = cfg.limits;
    limits.dt_bar = dt_bar;

    EpisodeResult result;
    State state = cfg.initial;
    const double v_c0 = cfg.v_bar_c0.value_or(guidance::optimal_loiter_speed(ctx));
    Commands cmd{v_c0, cfg.initial.psi, 0.0};
    double previous_mu = 0.0;
    double integral = 0.0;

    auto audit_controls = [&](const ClosedLoopControls& c) {
        ++result.audit.controls_checked;
        if (!controls_within_limits(c.controls, ctx.limits)) ++result.audit.control_violations;
        result.saturation.add(c);
    };

    try {
        for (int u = 0; u < cfg.num_updates; ++u) {
            const double t0 = u * dt_bar;

            if (cfg.strategy != guidance::StrategyKind::Reference) {
                const auto insitu = guidance::InsituWind::from_sample(field.sample(state.position(), t0));
                GuidanceEvent ev;
                ev.t_bar = t0;
                ev.dv_box = guidance::airspeed_step_box(cmd.v_bar_c, limits);
                ev.dpsi_box = guidance::heading_step_box(cmd.psi_c, limits);
                ev.adjustment = guidance::adjust(cfg.strategy, cmd.v_bar_c, cmd.psi_c, insitu, limits, ctx);
                const auto& adj = ev.adjustment;

                ++result.audit.adjustments_checked;
                if (!ev.dv_box.contains(adj.dv, kAuditTolerance) || !ev.dpsi_box.contains(adj.dpsi, kAuditTolerance)) {
                    ++result.audit.adjustment_violations;
                }
                result.singular_projections += adj.singular;

                cmd.v_bar_c += adj.dv;
                cmd.psi_c += adj.dpsi;
                if (cfg.record_trajectory) result.guidance_events.push_back(ev);
            }

            // Trapezoid over the interval with this interval's command held fixed.
            double interval_sum = 0.0;
            for (int k = 0; k < cfg.steps_per_update; ++k) {
                const double t = t0 + k * h;
                StepResult step = integrate_step(state, cmd, field, t, ctx, cfg.gains, h, previous_mu);
                audit_controls(step.controls);
                previous_mu = step.controls.controls.mu;
                interval_sum += (k == 0 ? 0.5 : 1.0) * step.power;
                result.max_airspeed_deviation =
                    std::max(result.max_airspeed_deviation, std::abs(state.v_bar - v_c0));
                if (cfg.record_trajectory) {
                    result.trajectory.push_back({t, state, cmd, step.controls.controls, step.power});
                }
                state = step.state;
            }
            const auto end_w = field.sample(state.position(), t0 + dt_bar);
            const auto end_controls = tracking::compute_controls(state, end_w, cmd, cfg.gains, ctx, previous_mu);
            audit_controls(end_controls);
            interval_sum += 0.5 * dynamics::instantaneous_power(end_controls.controls, state);
            integral += interval_sum * h;
            result.max_airspeed_deviation = std::max(result.max_airspeed_deviation, std::abs(state.v_bar - v_c0));
            if (cfg.record_trajectory && u + 1 == cfg.num_updates) {
                result.trajectory.push_back({t0 + dt_bar, state, cmd, end_controls.controls,
                                             dynamics::instantaneous_power(end_controls.controls, state)});
            }
        }
    } catch (const SingularStateError& e) {
        result.valid = false;
        result.abort_reason = e.what();
        ++result.speed_guard_hits;
    }

    result.t_final_bar = cfg.num_updates * dt_bar;
    result.avg_power = integral / result.t_final_bar;
    result.final_state = state;
    return result;
}

namespace {

SweepResult sweep_impl(const EpisodeConfig& tmpl, double dpsi0_deg, const wind::WindField& field,
                       const NormContext& ctx, unsigned workers, bool strict) {
    if (!(dpsi0_deg > 0.0)) throw DomainError("heading increment must be positive");
    const double n_real = 360.0 / dpsi0_deg;
    const auto n = static_cast<std::size_t>(std::llround(n_real));
    if (n == 0 || std::abs(n_real - static_cast<double>(n)) > 1e-9) {
        throw DomainError("heading increment must divide 360 deg");
    }

    SweepResult sweep;
    sweep.table.resize(n);
    parallel_for(n, workers, [&](std::size_t i) {
        EpisodeConfig cfg = tmpl;
        const double psi0_deg = static_cast<double>(i) * dpsi0_deg;
        cfg.initial.psi = dynamics::wrap_two_pi(psi0_deg * std::numbers::pi / 180.0);
        sweep.table[i] = {psi0_deg, run_episode(cfg, field, ctx)};
    });

    // fixed index order keeps the reduction independent of scheduling
    double sum = 0.0;
    std::size_t valid = 0;
    std::ostringstream failures;
    for (const auto& entry : sweep.table) {
        const auto& r = entry.result;
        sweep.saturation.merge(r.saturation);
        sweep.audit.merge(r.audit);
        sweep.singular_projections += r.singular_projections;
        if (r.valid) {
            sum += r.avg_power;
            ++valid;
        } else {
            ++sweep.n_invalid;
            failures << "\n  psi0 = " << entry.psi0_deg << " deg: " << r.abort_reason;
        }
    }
    if (strict && sweep.n_invalid > 0) {
        throw SweepError(std::to_string(sweep.n_invalid) + " invalid episode(s) in heading sweep:" + failures.str());
    }
    sweep.p_avg = valid > 0 ? sum / static_cast<double>(valid) : std::nan("");
    return sweep;
}

}  // namespace

SweepResult heading_sweep(const EpisodeConfig& tmpl, double dpsi0_deg, const wind::WindField& field,
                          const NormContext& ctx, unsigned workers) {
    return sweep_impl(tmpl, dpsi0_deg, field, ctx, workers, true);
}

SweepResult heading_sweep_lenient(const EpisodeConfig& tmpl, double dpsi0_deg, const wind::WindField& field,
                                  const NormContext& ctx, unsigned workers) {
    return sweep_impl(tmpl, dpsi0_deg, field, ctx, workers, false);
}

double benefit(double p0_avg, double pi_avg) {
    if (!(p0_avg > 0.0)) throw DomainError("reference power must be positive");
    return (p0_avg - pi_avg) / p0_avg;
}

}  // namespace windguide::sim
