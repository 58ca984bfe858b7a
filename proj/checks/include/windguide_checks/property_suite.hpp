#pragma once

// Randomized invariant checks over the core library. Each check draws its own inputs from a
// seeded generator and compares against an independent oracle.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "windguide/dynamics.hpp"
#include "windguide/guidance.hpp"

namespace windguide::checks {

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;      ///< worst observed error in the check's own metric
    double tolerance = 0.0;
    std::size_t draws = 0;
    std::size_t redraws = 0;  ///< samples rejected by the check's draw filter
    double seconds = 0.0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t draws = 1000;
};

/// Uniform draws on [lo, hi) from a 64-bit Mersenne Twister.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    /// In-situ wind with components in [-wind_abs, wind_abs] and gradients/time partials in
    /// [-grad_abs, grad_abs].
    guidance::InsituWind insitu_wind(double wind_abs, double grad_abs);

private:
    std::mt19937_64 rng_;
};

/// ScanEagle context at the default normalization.
const dynamics::NormContext& default_context();

/// Analytic projected-power gradients against central differences (relative error <= 1e-6).
CheckResult check_power_gradients(const SuiteOptions& opt);
/// Closed-form position change against fixed-point iteration of the trapezoidal system (1e-10).
CheckResult check_position_projection(const SuiteOptions& opt);
/// Analytic wind-field gradients against central differences (1e-6).
CheckResult check_wind_gradients(const SuiteOptions& opt);
/// Level-flight wind rate against the general wind-axis form at gamma = 0.
CheckResult check_level_wind_rate(const SuiteOptions& opt);
/// Unsaturated closed loop reduces to three decoupled first-order channels (1e-10).
CheckResult check_closed_loop_linearization(const SuiteOptions& opt);
/// Saturation lands inside the limits and is idempotent.
CheckResult check_saturation(const SuiteOptions& opt);
/// Adjustments respect the per-strategy structure, step boxes and deadband.
CheckResult check_adjustments(const SuiteOptions& opt);
/// Closed-form loiter speed against golden-section minimization of level power.
CheckResult check_loiter_speed(const SuiteOptions& opt);

std::vector<CheckResult> run_property_suite(const SuiteOptions& opt);

}  // namespace windguide::checks
