#pragma once

// Reference computations that deliberately avoid the closed forms they are used to check.

#include <functional>
#include <optional>

#include "windguide/dynamics.hpp"
#include "windguide/guidance.hpp"

namespace windguide::checks {

/// Central difference of guidance::projected_power in dV_c at zero adjustments.
double fd_power_wrt_airspeed(double v0, double psi0, const guidance::InsituWind& w, double dt_bar,
                             const dynamics::NormContext& ctx, double step = 1e-6);

/// Central difference of guidance::projected_power in dPsi_c at zero adjustments.
double fd_power_wrt_heading(double v0, double psi0, const guidance::InsituWind& w, double dt_bar,
                            const dynamics::NormContext& ctx, double step = 1e-6);

struct FixedPointResult {
    double dx = 0.0;
    double dy = 0.0;
    int iterations = 0;
};

/// Solves the trapezoidal position-change equations by iterating
///   (dx, dy) <- dt/2 * (ground velocity at start + ground velocity at end with projected wind)
/// to convergence. Returns nullopt if the iteration does not converge.
std::optional<FixedPointResult> fixed_point_position_change(double v0, double psi0, double dv, double dpsi,
                                                            const guidance::InsituWind& w, double dt_bar,
                                                            double tol = 1e-15, int max_iter = 10000);

/// Spectral radius of (dt/2) * G for the planar gradient G; the fixed-point map contracts iff < 1.
double trapezoid_iteration_radius(const guidance::InsituWind& w, double dt_bar);

/// Golden-section minimizer on [lo, hi] for a unimodal function.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12);

/// Airspeed minimizing zero-wind steady level power, found numerically.
double numeric_loiter_speed(const dynamics::NormContext& ctx);

/// Maximum of C_L / (C_D0 + K C_L^2) found by golden section.
double numeric_max_lift_to_drag(double c_d0, double k_induced);

/// Least-squares slope of log|e(t)| against t.
double log_linear_decay_rate(const std::vector<double>& t, const std::vector<double>& err);

}  // namespace windguide::checks
