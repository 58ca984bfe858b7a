#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "windguide/dynamics.hpp"
#include "windguide/guidance.hpp"
#include "windguide/simulator.hpp"
#include "windguide/tracking.hpp"
#include "windguide/windfield.hpp"

namespace windguide::harness {

inline constexpr double kMetersPerFoot = 0.3048;

struct WindSettings {
    double w_m0_mps = 9.5;
    double a_x = 0.5;
    double a_y = 0.5;
    double psi_w_deg = 90.0;
    /// Spatial frequencies (rad per normalized length), applied to both axes.
    std::vector<double> omega_m;
};

struct GuidanceSettings {
    double dt_s = 10.0;
    double dv_max_mps = 5.0 * kMetersPerFoot;
    double dpsi_max_deg = 30.0;
    double v_min_mps = 20.0;
    double v_max_mps = 30.0;
    std::optional<double> psi_min_deg;
    std::optional<double> psi_max_deg;
    double epsilon = 1e-4;
    double eta = 1.0;
};

struct SimulationSettings {
    int steps_per_update = 50;
    int num_updates = 50;
    double dpsi0_deg = 5.0;
    double h0_m = 0.0;
};

enum class OutputFormat { Csv, Json };

std::string_view to_string(OutputFormat f);
OutputFormat format_from_string(std::string_view s);

struct ExperimentConfig {
    dynamics::PhysicalUavParams uav = dynamics::scan_eagle_params();
    double v_n_mps = dynamics::kDefaultCharacteristicSpeed;
    double rho_air = dynamics::kSeaLevelDensity;
    double g = dynamics::kStandardGravity;
    WindSettings wind;
    tracking::TrackingGains gains;
    GuidanceSettings guidance;
    SimulationSettings simulation;
    std::vector<guidance::StrategyKind> strategies;
    std::string output_path;
    OutputFormat output_format = OutputFormat::Csv;

    dynamics::NormContext norm_context() const;
    guidance::GuidanceLimits guidance_limits(const dynamics::NormContext& ctx) const;
    wind::WindFieldSpec wind_spec(double omega_m) const;
    /// Episode template (initial heading is filled in by the heading sweep).
    sim::EpisodeConfig episode_template(guidance::StrategyKind strategy, const dynamics::NormContext& ctx) const;
};

/// Vehicle, wind and guidance values used for the benefit-versus-frequency study.
ExperimentConfig default_experiment_config();

/// Parses and validates a JSON configuration. Unknown keys and every invariant violation are
/// collected and thrown together as ConfigError. Missing keys take the defaults.
ExperimentConfig validate_config(std::string_view text);

/// Non-fatal findings about a valid configuration (e.g. amplitudes that allow negative magnitude).
std::vector<std::string> config_warnings(const ExperimentConfig& cfg);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Serializes a configuration in the same schema validate_config accepts.
std::string config_to_json(const ExperimentConfig& cfg);

struct RowDiagnostics {
    std::size_t singular_projections = 0;
    std::size_t adjustment_violations = 0;
    std::size_t control_violations = 0;
    std::size_t adjustments_checked = 0;
    std::size_t controls_checked = 0;
    sim::SaturationCounters saturation;
};

struct BenefitRow {
    double omega_m = 0.0;
    int strategy = 0;  ///< 1 airspeed, 2 heading, 3 combined
    double p_ref_avg = 0.0;
    double p_strategy_avg = 0.0;
    double benefit = 0.0;
    std::size_t n_headings = 0;
    std::size_t n_invalid = 0;
    RowDiagnostics diagnostics;
};

bool operator==(const BenefitRow& a, const BenefitRow& b);

struct ExperimentResult {
    std::vector<BenefitRow> rows;
    /// Diagnostics of the reference sweeps, one per frequency.
    std::vector<RowDiagnostics> reference_diagnostics;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// For each frequency: one reference heading sweep, then one sweep per requested strategy.
ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers = 1,
                                const ProgressFn& progress = {});

std::string format_results(const std::vector<BenefitRow>& rows, OutputFormat format);
std::vector<BenefitRow> parse_results(std::string_view text, OutputFormat format);

/// Writes rows to path. Throws IoError (with the path) on failure, DomainError on empty rows.
void emit_results(const std::vector<BenefitRow>& rows, OutputFormat format, const std::filesystem::path& path);

/// Trajectory of one episode as CSV (time in seconds, state normalized, angles in degrees).
std::string format_trajectory(const sim::EpisodeResult& result, const dynamics::NormContext& ctx);

}  // namespace windguide::harness
