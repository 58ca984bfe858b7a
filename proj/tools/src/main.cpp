// windguide command-line front end: experiments, single episodes and the property suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "windguide/errors.hpp"
#include "windguide/harness.hpp"
#include "windguide_checks/property_suite.hpp"

namespace {

using namespace windguide;

// Exit codes, one per error class.
enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kConfig = 3,
    kIo = 4,
    kNumeric = 5,
    kChecksFailed = 6,
};

struct CommonFlags {
    std::string output;
    std::string format;
    unsigned workers = 1;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("-o,--output", f.output, "Output file (stdout if omitted)");
    cmd->add_option("-f,--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-w,--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Seed for randomized property checks (experiments are deterministic)");
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

harness::ExperimentConfig config_or_default(const std::string& path) {
    auto cfg = path.empty() ? harness::default_experiment_config() : harness::load_config(path);
    for (const auto& w : harness::config_warnings(cfg)) std::cerr << "warning: " << w << '\n';
    return cfg;
}

int cmd_run(const std::string& config_path, const CommonFlags& f) {
    auto cfg = config_or_default(config_path);
    if (!f.format.empty()) cfg.output_format = harness::format_from_string(f.format);
    const std::string path = f.output.empty() ? cfg.output_path : f.output;

    auto progress = [](std::size_t done, std::size_t total) {
        std::cerr << "\rsweeps " << done << '/' << total << std::flush;
        if (done == total) std::cerr << '\n';
    };
    const auto result = harness::run_experiment(cfg, f.workers, progress);
    if (path.empty()) {
        std::cout << harness::format_results(result.rows, cfg.output_format);
    } else {
        harness::emit_results(result.rows, cfg.output_format, path);
        std::cerr << "wrote " << result.rows.size() << " rows to " << path << '\n';
    }
    return kOk;
}

struct EpisodeFlags {
    std::string strategy = "combined";
    double omega = 0.1;
    double psi0_deg = 0.0;
};

int cmd_episode(const std::string& config_path, const EpisodeFlags& e, const CommonFlags& f) {
    const auto cfg = config_or_default(config_path);
    const auto ctx = cfg.norm_context();
    const auto kind = guidance::strategy_from_string(e.strategy);

    auto ep = cfg.episode_template(kind, ctx);
    const double psi0 = e.psi0_deg * std::numbers::pi / 180.0;
    ep.initial = sim::initial_trim_state(psi0, ctx, ctx.to_length_bar(cfg.simulation.h0_m));
    ep.record_trajectory = true;
    const wind::SinusoidalWindField field(cfg.wind_spec(e.omega), ctx.v_n);
    const auto r = sim::run_episode(ep, field, ctx);

    if (f.format == "json") {
        nlohmann::ordered_json j;
        j["strategy"] = std::string(guidance::to_string(kind));
        j["omega_m"] = e.omega;
        j["psi0_deg"] = e.psi0_deg;
        j["valid"] = r.valid;
        j["abort_reason"] = r.abort_reason;
        j["avg_power"] = r.avg_power;
        j["avg_power_w"] = ctx.to_watts(r.avg_power);
        j["t_final_s"] = ctx.to_seconds(r.t_final_bar);
        j["singular_projections"] = r.singular_projections;
        j["constraint_violations"] = r.audit.violations();
        auto& traj = j["trajectory"];
        traj = nlohmann::ordered_json::array();
        for (const auto& p : r.trajectory) {
            traj.push_back({{"t_s", ctx.to_seconds(p.t_bar)}, {"v_bar", p.state.v_bar}, {"psi", p.state.psi},
                            {"gamma", p.state.gamma}, {"x_bar", p.state.x_bar}, {"y_bar", p.state.y_bar},
                            {"h_bar", p.state.h_bar}, {"v_bar_c", p.commands.v_bar_c}, {"psi_c", p.commands.psi_c},
                            {"p_bar", p.power}, {"c_l", p.controls.c_l}, {"mu", p.controls.mu}});
        }
        write_text(j.dump(2) + "\n", f.output);
    } else {
        write_text(harness::format_trajectory(r, ctx), f.output);
    }
    std::cerr << "avg_power " << r.avg_power << (r.valid ? "" : " (invalid: " + r.abort_reason + ")") << '\n';
    return r.valid ? kOk : kNumeric;
}

int cmd_check(std::size_t draws, const CommonFlags& f) {
    const auto results = checks::run_property_suite({f.seed, draws});
    bool all = true;
    std::string text;
    if (f.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& r : results) {
            j.push_back({{"name", r.name}, {"passed", r.passed}, {"worst", r.worst}, {"tolerance", r.tolerance},
                         {"draws", r.draws}, {"redraws", r.redraws}, {"seconds", r.seconds}, {"detail", r.detail}});
            all = all && r.passed;
        }
        text = j.dump(2) + "\n";
    } else {
        text = "name,passed,worst,tolerance,draws,redraws,seconds\n";
        char buf[512];
        for (const auto& r : results) {
            std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%zu,%zu,%.3f\n", r.name.c_str(), r.passed ? 1 : 0,
                          r.worst, r.tolerance, r.draws, r.redraws, r.seconds);
            text += buf;
            all = all && r.passed;
        }
    }
    write_text(text, f.output);
    return all ? kOk : kChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wind-aware loiter guidance simulator"};
    app.require_subcommand(1);

    CommonFlags run_flags, episode_flags, check_flags;
    std::string run_config, episode_config;
    EpisodeFlags episode;
    std::size_t draws = 1000;

    auto* run = app.add_subcommand("run", "Run a benefit-versus-frequency experiment");
    run->add_option("config", run_config, "Experiment JSON file (defaults if omitted)");
    add_common(run, run_flags);

    auto* ep = app.add_subcommand("episode", "Simulate one episode and dump its trajectory");
    ep->add_option("config", episode_config, "Experiment JSON file (defaults if omitted)");
    ep->add_option("--strategy", episode.strategy, "reference|airspeed|heading|combined")->capture_default_str();
    ep->add_option("--omega", episode.omega, "Spatial frequency, rad per normalized length")->capture_default_str();
    ep->add_option("--psi0-deg", episode.psi0_deg, "Initial heading in degrees")->capture_default_str();
    add_common(ep, episode_flags);

    auto* chk = app.add_subcommand("check", "Run the randomized property suite");
    chk->add_option("--draws", draws, "Draws per check")->check(CLI::PositiveNumber)->capture_default_str();
    add_common(chk, check_flags);

    auto* defaults = app.add_subcommand("defaults", "Print the default experiment configuration");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*run) return cmd_run(run_config, run_flags);
        if (*ep) return cmd_episode(episode_config, episode, episode_flags);
        if (*chk) return cmd_check(draws, check_flags);
        if (*defaults) {
            std::cout << harness::config_to_json(harness::default_experiment_config()) << '\n';
            return kOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error:\n";
        for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
        return kConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const SingularStateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const SingularProjectionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const SweepError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
