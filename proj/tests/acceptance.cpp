// Acceptance suite: one PASS/FAIL line per criterion. Arguments select criteria (default: all).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "windguide/harness.hpp"
#include "windguide_checks/oracles.hpp"
#include "windguide_checks/property_suite.hpp"

using namespace windguide;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr double kDeg = std::numbers::pi / 180.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const dynamics::NormContext& ctx() { return checks::default_context(); }

Outcome oracle_check(const checks::CheckResult& r, std::optional<double> max_seconds = std::nullopt) {
    const bool fast = !max_seconds || r.seconds < *max_seconds;
    std::string detail = fmt("worst %.3e (tol %.0e), %zu draws, %zu redraws, %.3f s", r.worst, r.tolerance, r.draws,
                             r.redraws, r.seconds);
    if (max_seconds) detail += fmt(" (limit %.0f s)", *max_seconds);
    return {r.passed && fast && r.draws >= 1000, detail};
}

Outcome criterion_1() { return oracle_check(checks::check_power_gradients({kSeed, 1000}), 10.0); }

Outcome criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = harness::default_experiment_config();
    auto ep = cfg.episode_template(guidance::StrategyKind::Reference, ctx());
    const wind::SinusoidalWindField calm(wind::WindFieldSpec{}, ctx().v_n);
    const auto r = sim::run_episode(ep, calm, ctx());
    const double secs = elapsed(t0);

    const double v_star = guidance::optimal_loiter_speed(ctx());
    const double closed_form = ctx().rho_bar * std::pow(v_star, 3) * ctx().c_d0 + ctx().k_induced / (ctx().rho_bar * v_star);
    const double v_numeric = checks::numeric_loiter_speed(ctx());
    const double p_numeric = ctx().rho_bar * std::pow(v_numeric, 3) * ctx().c_d0 + ctx().k_induced / (ctx().rho_bar * v_numeric);

    const double power_err = std::abs(r.avg_power - closed_form);
    const double speed_oracle_err = std::abs(v_star - v_numeric);
    const double power_oracle_err = std::abs(closed_form - p_numeric);
    const double duration = ctx().to_seconds(r.t_final_bar);
    const bool pass = r.valid && power_err <= 1e-6 && speed_oracle_err <= 1e-8 && power_oracle_err <= 1e-12 &&
                      r.max_airspeed_deviation < 1e-9 && std::abs(duration - 500.0) < 1e-9 && secs < 1.0;
    return {pass, fmt("avg_power %.12f vs %.12f (err %.1e), V* oracle err %.1e, max|V-V*| %.1e over %.0f s, %.3f s",
                      r.avg_power, closed_form, power_err, speed_oracle_err, r.max_airspeed_deviation, duration, secs)};
}

// Closed-loop step response in calm air; returns the fitted physical time constant.
double step_time_constant(const std::function<void(tracking::Commands&)>& step_cmd,
                          const std::function<double(const dynamics::State&, const tracking::Commands&)>& error,
                          bool& saturated) {
    const wind::SinusoidalWindField calm(wind::WindFieldSpec{}, ctx().v_n);
    const double h = ctx().to_t_bar(10.0) / 50.0;
    dynamics::State s = sim::initial_trim_state(0.6, ctx());
    tracking::Commands cmd{s.v_bar, s.psi, 0.0};
    step_cmd(cmd);
    const double e0 = std::abs(error(s, cmd));
    std::vector<double> t, e;
    double mu = 0.0;
    saturated = false;
    for (int k = 0; ctx().to_seconds(k * h) <= 12.0; ++k) {
        const double err = error(s, cmd);
        // fit only while the error is well above round-off
        if (std::abs(err) > 1e-7 * e0) {
            t.push_back(k * h);
            e.push_back(err);
        }
        const auto r = sim::integrate_step(s, cmd, calm, k * h, ctx(), {}, h, mu);
        saturated = saturated || r.controls.flags.any();
        mu = r.controls.controls.mu;
        s = r.state;
    }
    const double rate = checks::log_linear_decay_rate(t, e);  // per normalized time
    return -ctx().t_n / rate;
}

Outcome criterion_3() {
    bool sat_v = false, sat_p = false, sat_g = false;
    const double tau_v = step_time_constant([](tracking::Commands& c) { c.v_bar_c += 0.05; },
                                            [](const auto& s, const auto& c) { return s.v_bar - c.v_bar_c; }, sat_v);
    const double tau_p = step_time_constant([](tracking::Commands& c) { c.psi_c += 10 * kDeg; },
                                            [](const auto& s, const auto& c) { return dynamics::wrap_pi(s.psi - c.psi_c); },
                                            sat_p);
    const double tau_g = step_time_constant([](tracking::Commands& c) { c.gamma_c = 2 * kDeg; },
                                            [](const auto& s, const auto& c) { return s.gamma - c.gamma_c; }, sat_g);
    auto ok = [](double tau) { return std::abs(tau - 2.0) <= 0.05 * 2.0; };
    const bool pass = ok(tau_v) && ok(tau_p) && ok(tau_g) && !sat_v && !sat_p && !sat_g;
    return {pass, fmt("tau_V %.6f s, tau_Psi %.6f s, tau_gamma %.6f s (2.0 s +/- 5%%), saturated %d/%d/%d", tau_v,
                      tau_p, tau_g, sat_v, sat_p, sat_g)};
}

Outcome criterion_4() { return oracle_check(checks::check_position_projection({kSeed, 1000})); }

Outcome criterion_5() { return oracle_check(checks::check_wind_gradients({kSeed, 1000})); }

struct Curves {
    std::vector<double> omega;
    std::map<int, std::vector<double>> benefit;  // strategy id -> per-frequency benefit
    harness::ExperimentResult result;
    double seconds = 0.0;
};

std::optional<Curves> g_default_run;

const Curves& default_run() {
    if (!g_default_run) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto cfg = harness::default_experiment_config();
        Curves c;
        c.result = harness::run_experiment(cfg, 1);
        c.omega = cfg.wind.omega_m;
        for (const auto& r : c.result.rows) c.benefit[r.strategy].push_back(r.benefit);
        c.seconds = elapsed(t0);
        g_default_run = std::move(c);
    }
    return *g_default_run;
}

Outcome criterion_6() {
    const auto cfg = harness::default_experiment_config();
    const auto& c = default_run();
    const auto& b1 = c.benefit.at(1);
    const auto& b2 = c.benefit.at(2);
    const auto& b3 = c.benefit.at(3);
    const std::size_t n = c.omega.size();
    const double decades = std::log10(c.omega.back() / c.omega.front());

    bool finite = true;
    for (const auto& [k, v] : c.benefit)
        for (double x : v) finite = finite && std::isfinite(x);

    const std::size_t peak = static_cast<std::size_t>(std::max_element(b3.begin(), b3.end()) - b3.begin());
    const bool a = b3[peak] >= b1[peak] && b1[peak] >= b2[peak];
    const double b2_peak = *std::max_element(b2.begin(), b2.end());
    const bool b = b2_peak < 0.02;
    // rises to an interior peak, then stays negative from some frequency on
    bool negative_tail = false;
    for (std::size_t j = peak + 1; j < n && !negative_tail; ++j) {
        negative_tail = std::all_of(b3.begin() + static_cast<long>(j), b3.end(), [](double x) { return x < 0.0; });
    }
    const bool c_ok = peak > 0 && peak + 1 < n && b3[peak] > b3.front() && negative_tail;
    const bool d = b3[peak] >= 0.03 && b3[peak] <= 0.15;
    const bool setup = n >= 12 && decades >= 3.0 - 1e-12 && cfg.wind.w_m0_mps == 9.5 && cfg.wind.psi_w_deg == 90.0 &&
                       cfg.guidance.dt_s == 10.0 && cfg.simulation.dpsi0_deg == 5.0;
    const bool fast = c.seconds < 600.0;

    std::ostringstream os;
    os << fmt("a=%d b=%d c=%d d=%d; peak B3 %.4f at omega %.4g (B1 %.4f, B2 %.4f); max B2 %.4f; %zu freqs over %.1f "
              "decades, amplitude %.2f/%.2f; %.1f s",
              a, b, c_ok, d, b3[peak], c.omega[peak], b1[peak], b2[peak], b2_peak, n, decades, cfg.wind.a_x,
              cfg.wind.a_y, c.seconds);
    os << "\n    omega      B1        B2        B3";
    for (std::size_t i = 0; i < n; ++i) os << fmt("\n    %-9.4g %+.4f  %+.4f  %+.4f", c.omega[i], b1[i], b2[i], b3[i]);
    return {finite && a && b && c_ok && d && setup && fast, os.str()};
}

Outcome criterion_7() {
    auto cfg = harness::default_experiment_config();
    cfg.wind.a_x = cfg.wind.a_y = 0.0;
    const auto res = harness::run_experiment(cfg, 1);
    double worst = 0.0;
    for (const auto& r : res.rows) worst = std::max(worst, std::isfinite(r.benefit) ? std::abs(r.benefit) : INFINITY);
    return {worst < 1e-6, fmt("max |B_i| %.3e over %zu rows (limit 1e-6)", worst, res.rows.size())};
}

Outcome criterion_8() {
    // Heading guidance in a smooth field, chosen to stay clear of every control limit;
    // step counts per update interval 20, 40 against 640
    const auto cfg = harness::default_experiment_config();
    const wind::SinusoidalWindField field(cfg.wind_spec(0.1), ctx().v_n);
    auto run = [&](int steps) {
        auto ep = cfg.episode_template(guidance::StrategyKind::HeadingOnly, ctx());
        ep.initial = sim::initial_trim_state(40 * kDeg, ctx());
        ep.num_updates = 10;
        ep.steps_per_update = steps;
        ep.record_trajectory = true;
        return sim::run_episode(ep, field, ctx());
    };
    const auto ref = run(640), coarse = run(20), fine = run(40);
    auto err = [&](const sim::EpisodeResult& r) {
        const auto &a = r.final_state, &b = ref.final_state;
        return std::max({std::abs(a.v_bar - b.v_bar), std::abs(dynamics::wrap_pi(a.psi - b.psi)),
                         std::abs(a.gamma - b.gamma), std::abs(a.x_bar - b.x_bar), std::abs(a.y_bar - b.y_bar),
                         std::abs(a.h_bar - b.h_bar)});
    };
    bool same_decisions = true;
    for (std::size_t i = 0; i < ref.guidance_events.size(); ++i) {
        for (const auto* r : {&coarse, &fine}) {
            same_decisions = same_decisions && r->guidance_events[i].adjustment.dv == ref.guidance_events[i].adjustment.dv &&
                             r->guidance_events[i].adjustment.dpsi == ref.guidance_events[i].adjustment.dpsi;
        }
    }
    std::size_t moves = 0;
    for (const auto& e : ref.guidance_events) moves += (e.adjustment.dv != 0.0) + (e.adjustment.dpsi != 0.0);
    const bool unsaturated = ref.saturation.power_low + ref.saturation.power_high + ref.saturation.lift_low +
                                 ref.saturation.lift_high + ref.saturation.bank ==
                             0;
    const double ratio = err(coarse) / err(fine);
    return {ratio >= 12.0 && ratio <= 20.0 && same_decisions && moves > 0 && unsaturated,
            fmt("errors %.3e (dt/20) %.3e (dt/40), ratio %.2f in [12, 20]; %zu command changes, identical decisions %d, "
                "unsaturated %d",
                err(coarse), err(fine), ratio, moves, same_decisions, unsaturated)};
}

Outcome criterion_9() {
    const auto& c = default_run();
    std::size_t adj_checked = 0, adj_bad = 0, ctl_checked = 0, ctl_bad = 0;
    auto add = [&](const harness::RowDiagnostics& d) {
        adj_checked += d.adjustments_checked;
        adj_bad += d.adjustment_violations;
        ctl_checked += d.controls_checked;
        ctl_bad += d.control_violations;
    };
    for (const auto& r : c.result.rows) add(r.diagnostics);
    for (const auto& d : c.result.reference_diagnostics) add(d);
    return {adj_bad == 0 && ctl_bad == 0 && adj_checked > 0 && ctl_checked > 0,
            fmt("%zu/%zu adjustment violations, %zu/%zu control violations", adj_bad, adj_checked, ctl_bad, ctl_checked)};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria = {
    {"gradient oracle", criterion_1},
    {"trim hold", criterion_2},
    {"tracking time constants", criterion_3},
    {"position projection oracle", criterion_4},
    {"wind gradient oracle", criterion_5},
    {"benefit-vs-frequency trends", criterion_6},
    {"uniform-wind null", criterion_7},
    {"integrator order", criterion_8},
    {"constraint compliance", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome o;
        try {
            o = kCriteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("criterion %d %s: %s  %s\n", id, o.pass ? "PASS" : "FAIL", kCriteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
