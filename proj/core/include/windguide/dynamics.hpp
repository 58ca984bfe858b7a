#pragma once

#include "windguide/windfield.hpp"

namespace windguide::dynamics {

/// Physical vehicle description in SI units (angles in radians).
struct PhysicalUavParams {
    double mass = 0.0;       ///< kg
    double wing_area = 0.0;  ///< m^2
    double c_d0 = 0.0;
    double e_max = 0.0;      ///< maximum lift-to-drag ratio
    double p_max = 0.0;      ///< W
    double p_min = 0.0;      ///< W
    double v_max = 0.0;      ///< m/s
    double v_min = 0.0;      ///< m/s
    double c_l_max = 0.0;
    double c_l_min = 0.0;
    double mu_max = 0.0;     ///< rad

    void validate() const;
};

/// Vehicle parameters resembling the ScanEagle.
PhysicalUavParams scan_eagle_params();

/// Limits expressed in normalized units.
struct NormalizedLimits {
    double v_bar_min = 0.0;
    double v_bar_max = 0.0;
    double p_bar_min = 0.0;
    double p_bar_max = 0.0;
    double c_l_min = 0.0;
    double c_l_max = 0.0;
    double mu_max = 0.0;
};

/// Everything needed to move between physical and normalized quantities.
struct NormContext {
    double v_n = 0.0;           ///< m/s
    double g = 0.0;             ///< m/s^2
    double rho_air = 0.0;       ///< kg/m^3
    double mass = 0.0;          ///< kg
    double rho_bar = 0.0;       ///< rho S V_n^2 / (2 m g)
    double k_induced = 0.0;     ///< 1 / (4 C_D0 E_max^2)
    double c_d0 = 0.0;
    double t_n = 0.0;           ///< s, V_n / g
    double length_scale = 0.0;  ///< m, V_n^2 / g
    double power_scale = 0.0;   ///< W, m g V_n
    NormalizedLimits limits;

    double to_v_bar(double v_mps) const { return v_mps / v_n; }
    double to_mps(double v_bar) const { return v_bar * v_n; }
    double to_t_bar(double t_s) const { return t_s / t_n; }
    double to_seconds(double t_bar) const { return t_bar * t_n; }
    double to_p_bar(double p_w) const { return p_w / power_scale; }
    double to_watts(double p_bar) const { return p_bar * power_scale; }
    double to_length_bar(double l_m) const { return l_m / length_scale; }
    double to_meters(double l_bar) const { return l_bar * length_scale; }
};

inline constexpr double kStandardGravity = 9.80665;
inline constexpr double kSeaLevelDensity = 1.225;
inline constexpr double kDefaultCharacteristicSpeed = 20.0;

/// Throws DomainError on non-positive inputs or invalid vehicle parameters.
NormContext build_norm_context(const PhysicalUavParams& params, double v_n = kDefaultCharacteristicSpeed,
                               double rho_air = kSeaLevelDensity, double g = kStandardGravity);

/// Normalized point-mass state. psi is measured from north toward east.
struct State {
    double v_bar = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    double x_bar = 0.0;
    double y_bar = 0.0;
    double h_bar = 0.0;

    wind::Position position() const { return {x_bar, y_bar, h_bar}; }
};

/// Time derivative of State with respect to normalized time.
struct StateRate {
    double v_bar = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    double x_bar = 0.0;
    double y_bar = 0.0;
    double h_bar = 0.0;
};

State advance(const State& s, const StateRate& r, double dt);

struct Controls {
    double p_bar = 0.0;  ///< normalized power, T_bar * V_bar
    double c_l = 0.0;
    double mu = 0.0;     ///< rad

    double thrust(double v_bar) const { return p_bar / v_bar; }
};

/// Normalized wind rates along the wind axes: airspeed, heading and flight-path directions.
struct WindRates {
    double w_v_rate = 0.0;
    double w_psi_rate = 0.0;
    double w_gamma_rate = 0.0;
};

/// Airspeed below which the equations of motion are treated as singular.
inline constexpr double kAirspeedGuard = 0.05;

/// Wraps an angle into [0, 2pi).
double wrap_two_pi(double angle);
/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);

/// Inertial wind acceleration along the flight path (chain rule with ground-relative velocity),
/// projected on the airspeed, heading and flight-path axes.
WindRates wind_relative_rates(const State& state, const wind::WindSample& wind);

/// Level-flight reduced form of w_v_rate (gamma = 0, no vertical wind). Kept separate from
/// wind_relative_rates so the two can be cross-checked.
double level_flight_wind_v_rate(double v_bar, double psi, const wind::WindSample& wind);

/// Normalized equations of motion. Throws SingularStateError below the airspeed guard.
StateRate state_derivative(const State& state, const Controls& controls, const wind::WindSample& wind,
                           const NormContext& ctx);

/// T_bar * V_bar.
double instantaneous_power(const Controls& controls, const State& state);

/// Steady level-flight power rho V^3 C_D0 + K / (rho V) in zero wind.
double level_flight_power(double v_bar, const NormContext& ctx);

/// Zero-wind, wings-level trim controls at the given airspeed.
Controls level_trim_controls(double v_bar, const NormContext& ctx);

}  // namespace windguide::dynamics
