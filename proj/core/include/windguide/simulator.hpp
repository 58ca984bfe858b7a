#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "windguide/dynamics.hpp"
#include "windguide/guidance.hpp"
#include "windguide/tracking.hpp"
#include "windguide/windfield.hpp"

namespace windguide::sim {

struct StepResult {
    dynamics::State state;                 ///< state after the step, psi wrapped to [0, 2pi)
    tracking::ClosedLoopControls controls;  ///< controls at the start of the step
    double power = 0.0;                    ///< T_bar * V_bar at the start of the step
};

/// One classical RK4 step of the closed loop; controls are recomputed from the tracking laws at
/// every stage. previous_mu feeds the bank-hold fallback of the bank law.
/// Throws SingularStateError when the airspeed guard is violated.
StepResult integrate_step(const dynamics::State& state, const tracking::Commands& commands,
                          const wind::WindField& field, double t_bar, const dynamics::NormContext& ctx,
                          const tracking::TrackingGains& gains, double step, double previous_mu = 0.0);

struct EpisodeConfig {
    dynamics::State initial;
    guidance::StrategyKind strategy = guidance::StrategyKind::Reference;
    double update_interval_s = 10.0;
    int steps_per_update = 50;
    int num_updates = 50;
    /// Initial commanded airspeed; defaults to the optimal loiter speed when unset.
    std::optional<double> v_bar_c0;
    guidance::GuidanceLimits limits;  ///< dt_bar is overwritten from update_interval_s
    tracking::TrackingGains gains;
    bool record_trajectory = false;

    void validate() const;
};

struct TrajectoryPoint {
    double t_bar = 0.0;
    dynamics::State state;
    tracking::Commands commands;
    dynamics::Controls controls;
    double power = 0.0;
};

struct GuidanceEvent {
    double t_bar = 0.0;
    guidance::Adjustment adjustment;
    guidance::Interval dv_box;
    guidance::Interval dpsi_box;
};

struct SaturationCounters {
    std::size_t samples = 0;
    std::size_t power_low = 0;
    std::size_t power_high = 0;
    std::size_t lift_low = 0;
    std::size_t lift_high = 0;
    std::size_t bank = 0;
    std::size_t degenerate_bank = 0;

    void add(const tracking::ClosedLoopControls& c);
    void merge(const SaturationCounters& other);
};

/// Post-hoc constraint audit of everything the episode emitted.
struct ConstraintAudit {
    std::size_t adjustments_checked = 0;
    std::size_t adjustment_violations = 0;
    std::size_t controls_checked = 0;
    std::size_t control_violations = 0;

    void merge(const ConstraintAudit& other);
    std::size_t violations() const { return adjustment_violations + control_violations; }
};

struct EpisodeResult {
    bool valid = true;
    std::string abort_reason;
    double avg_power = 0.0;
    double t_final_bar = 0.0;
    dynamics::State final_state;
    double max_airspeed_deviation = 0.0;  ///< max |V_bar - V_bar_c0| over all samples
    SaturationCounters saturation;
    ConstraintAudit audit;
    std::size_t singular_projections = 0;
    std::size_t speed_guard_hits = 0;
    std::vector<TrajectoryPoint> trajectory;
    std::vector<GuidanceEvent> guidance_events;
};

/// Runs one closed-loop episode. Integration aborts are captured in the result (valid = false).
EpisodeResult run_episode(const EpisodeConfig& cfg, const wind::WindField& field, const dynamics::NormContext& ctx);

/// Zero-wind level trim at the optimal loiter speed, given heading, origin position.
dynamics::State initial_trim_state(double psi0, const dynamics::NormContext& ctx, double h_bar0 = 0.0);

struct HeadingEntry {
    double psi0_deg = 0.0;
    EpisodeResult result;
};

struct SweepResult {
    double p_avg = 0.0;
    std::vector<HeadingEntry> table;
    SaturationCounters saturation;
    ConstraintAudit audit;
    std::size_t singular_projections = 0;
    std::size_t n_invalid = 0;
};

/// Runs 360/dpsi0 episodes differing only in initial heading (and the matching heading command).
/// Throws SweepError if any episode is invalid, DomainError if dpsi0_deg does not divide 360.
/// Results are reduced in heading-index order regardless of `workers`.
SweepResult heading_sweep(const EpisodeConfig& tmpl, double dpsi0_deg, const wind::WindField& field,
                          const dynamics::NormContext& ctx, unsigned workers = 1);

/// Like heading_sweep but never throws on invalid episodes; n_invalid counts them and p_avg
/// averages the valid ones only.
SweepResult heading_sweep_lenient(const EpisodeConfig& tmpl, double dpsi0_deg, const wind::WindField& field,
                                  const dynamics::NormContext& ctx, unsigned workers = 1);

/// Relative power saving (p0 - pi) / p0. Throws DomainError if p0_avg <= 0.
double benefit(double p0_avg, double pi_avg);

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn);

}  // namespace windguide::sim

#include "windguide/detail/parallel.hpp"
