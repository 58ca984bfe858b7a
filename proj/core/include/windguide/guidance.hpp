#pragma once

#include <limits>
#include <string_view>

#include "windguide/dynamics.hpp"

namespace windguide::guidance {

/// Planar wind information measured at the vehicle: components, horizontal gradients and time partials.
struct InsituWind {
    double w_x0 = 0.0;
    double w_y0 = 0.0;
    double g_xx = 0.0;  ///< dWx/dx
    double g_xy = 0.0;  ///< dWx/dy
    double g_yx = 0.0;  ///< dWy/dx
    double g_yy = 0.0;  ///< dWy/dy
    double tp_x = 0.0;  ///< dWx/dt
    double tp_y = 0.0;  ///< dWy/dt

    static InsituWind from_sample(const wind::WindSample& s);
};

struct GuidanceLimits {
    double dv_max = 0.0;    ///< max |dV_c| per update
    double dpsi_max = 0.0;  ///< rad, max |dPsi_c| per update
    double v_bar_min = 0.0;
    double v_bar_max = 0.0;
    /// Optional absolute heading box; infinite by default (no global restriction).
    double psi_min = -std::numeric_limits<double>::infinity();
    double psi_max = std::numeric_limits<double>::infinity();
    double epsilon = 1e-4;
    double eta = 1.0;
    double dt_bar = 0.0;

    void validate() const;
};

enum class StrategyKind { Reference = 0, AirspeedOnly = 1, HeadingOnly = 2, Combined = 3 };

std::string_view to_string(StrategyKind k);
/// Accepts "reference", "airspeed", "heading", "combined" (and the *_only spellings).
StrategyKind strategy_from_string(std::string_view name);

/// Zero-wind maximum-endurance airspeed (K / (3 rho^2 C_D0))^(1/4).
double optimal_loiter_speed(const dynamics::NormContext& ctx);

/// Determinant magnitude below which the position-change system is treated as singular.
inline constexpr double kSingularQ2d = 1e-9;

struct PositionChange {
    double dx = 0.0;
    double dy = 0.0;
    double q2d = 0.0;
};

/// Trapezoidal position change over one update interval under the constant-gradient assumption,
/// assuming the adjusted airspeed and heading are reached at the end of the interval.
/// Throws SingularProjectionError when |Q_2D| < kSingularQ2d.
PositionChange projected_position_change(double v0, double psi0, double dv, double dpsi, const InsituWind& wind,
                                         double dt_bar);

/// Wind components at t0 + dt projected with the constant-gradient assumption.
struct ProjectedWind {
    double w_x = 0.0;
    double w_y = 0.0;
};

ProjectedWind projected_wind(const PositionChange& change, const InsituWind& wind, double dt_bar);

/// Level-flight wind rate along the airspeed vector at t0 + dt.
double projected_wind_rate(double v0, double psi0, double dv, double dpsi, const InsituWind& wind, double dt_bar);

/// Steady level-flight power projected to t0 + dt. Throws DomainError if v0 + dv <= 0.
double projected_power(double v0, double psi0, double dv, double dpsi, const InsituWind& wind, double dt_bar,
                       const dynamics::NormContext& ctx);

/// d(projected_power)/d(dV_c) at zero adjustments.
double airspeed_gradient(double v0, double psi0, const InsituWind& wind, double dt_bar,
                         const dynamics::NormContext& ctx);

/// d(projected_power)/d(dPsi_c) at zero adjustments.
double heading_gradient(double v0, double psi0, const InsituWind& wind, double dt_bar,
                        const dynamics::NormContext& ctx);

struct Adjustment {
    double dv = 0.0;
    double dpsi = 0.0;
    double airspeed_gradient = 0.0;
    double heading_gradient = 0.0;
    /// Projection system was singular; the adjustment was forced to zero.
    bool singular = false;
    /// The airspeed or heading box was empty (operating point outside the box by more than one step).
    bool infeasible_box = false;
};

/// One guidance update. Both gradients are evaluated at zero adjustments.
Adjustment adjust(StrategyKind strategy, double v0, double psi0, const InsituWind& wind,
                  const GuidanceLimits& limits, const dynamics::NormContext& ctx);

/// Allowed interval [lo, hi] for the airspeed increment.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v, double tol = 0.0) const { return v >= lo - tol && v <= hi + tol; }
};

Interval airspeed_step_box(double v0, const GuidanceLimits& limits);
Interval heading_step_box(double psi0, const GuidanceLimits& limits);

struct LimitBounds {
    double dv_max_bound = 0.0;
    double dpsi_max_bound = 0.0;
};

/// Largest increments achievable within one update interval from excess power and bank authority.
LimitBounds guidance_limit_bounds(const dynamics::State& state, const dynamics::NormContext& ctx, double dt_bar);

}  // namespace windguide::guidance
