#pragma once

#include "windguide/dynamics.hpp"

namespace windguide::tracking {

/// First-order loop gains in 1/s (physical time).
struct TrackingGains {
    double k_v = 0.5;
    double k_psi = 0.5;
    double k_gamma = 0.5;

    void validate() const;
};

struct Commands {
    double v_bar_c = 0.0;
    double psi_c = 0.0;
    double gamma_c = 0.0;
};

/// Which saturation limits were active for a set of controls.
struct SaturationFlags {
    bool power_low = false;
    bool power_high = false;
    bool lift_low = false;
    bool lift_high = false;
    bool bank = false;

    bool any() const { return power_low || power_high || lift_low || lift_high || bank; }
};

/// Feedback-linearizing thrust. Returns unsaturated T_bar.
double thrust_law(const dynamics::State& state, const dynamics::WindRates& rates, const Commands& cmd,
                  const TrackingGains& gains, const dynamics::NormContext& ctx, double c_l);

struct BankAndLift {
    double mu = 0.0;
    double c_l = 0.0;
    /// Both the heading and flight-path channels demanded zero lift; mu was held.
    bool degenerate = false;
};

/// Feedback-linearizing bank angle and lift coefficient (unsaturated).
/// previous_mu is returned as the bank angle when the demanded lift vector vanishes.
BankAndLift bank_and_lift_law(const dynamics::State& state, const dynamics::WindRates& rates,
                              const Commands& cmd, const TrackingGains& gains,
                              const dynamics::NormContext& ctx, double previous_mu = 0.0);

struct SaturatedControls {
    dynamics::Controls controls;
    SaturationFlags flags;
};

/// Clamps C_L, mu and P_bar into the normalized limits of ctx.
SaturatedControls saturate(const dynamics::Controls& controls, const dynamics::NormContext& ctx);

struct ClosedLoopControls {
    dynamics::Controls controls;
    SaturationFlags flags;
    bool degenerate_bank = false;
};

/// Full tracking pipeline: bank/lift law, saturation of C_L and mu, thrust law using the realized
/// C_L, then power saturation.
ClosedLoopControls compute_controls(const dynamics::State& state, const wind::WindSample& wind,
                                    const Commands& cmd, const TrackingGains& gains,
                                    const dynamics::NormContext& ctx, double previous_mu = 0.0);

}  // namespace windguide::tracking
