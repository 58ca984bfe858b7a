#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "windguide/errors.hpp"
#include "windguide/harness.hpp"

namespace windguide::harness {

using json = nlohmann::ordered_json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Reads typed fields out of one JSON object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class Section {
public:
    Section(const json* obj, std::string path, std::vector<std::string>& errors)
        : obj_(obj), path_(std::move(path)), errors_(errors) {
        if (obj_ && !obj_->is_object()) {
            errors_.push_back(path_ + ": expected an object");
            obj_ = nullptr;
        }
    }

    std::string key_path(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

    bool has(std::string_view key) const { return obj_ && obj_->contains(key); }

    void number(std::string_view key, double& out) {
        const json* v = take(key);
        if (!v) return;
        if (!v->is_number()) {
            errors_.push_back(key_path(key) + ": expected a number");
            return;
        }
        out = v->get<double>();
    }

    void optional_number(std::string_view key, std::optional<double>& out) {
        if (!has(key)) return;
        double v = 0.0;
        number(key, v);
        out = v;
    }

    void integer(std::string_view key, int& out) {
        const json* v = take(key);
        if (!v) return;
        if (!v->is_number_integer()) {
            errors_.push_back(key_path(key) + ": expected an integer");
            return;
        }
        out = v->get<int>();
    }

    void string(std::string_view key, std::string& out) {
        const json* v = take(key);
        if (!v) return;
        if (!v->is_string()) {
            errors_.push_back(key_path(key) + ": expected a string");
            return;
        }
        out = v->get<std::string>();
    }

    const json* take(std::string_view key) {
        if (!obj_) return nullptr;
        auto it = obj_->find(key);
        if (it == obj_->end()) return nullptr;
        used_.insert(std::string(key));
        return &*it;
    }

    Section child(std::string_view key) { return Section(take(key), key_path(key), errors_); }

    void reject_unknown() const {
        if (!obj_) return;
        for (auto it = obj_->begin(); it != obj_->end(); ++it) {
            if (!used_.count(it.key())) errors_.push_back(key_path(it.key()) + ": unknown key");
        }
    }

private:
    const json* obj_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> used_;
};

void check(bool ok, std::vector<std::string>& errors, const std::string& message) {
    if (!ok) errors.push_back(message);
}

void validate_semantics(const ExperimentConfig& c, std::vector<std::string>& errors) {
    const auto& u = c.uav;
    check(u.mass > 0, errors, "uav.mass_kg: must be > 0");
    check(u.wing_area > 0, errors, "uav.wing_area_m2: must be > 0");
    check(u.c_d0 > 0, errors, "uav.c_d0: must be > 0");
    check(u.e_max > 0, errors, "uav.e_max: must be > 0");
    check(u.c_l_min >= 0 && u.c_l_min < u.c_l_max, errors, "uav.c_l_min/c_l_max: require 0 <= c_l_min < c_l_max");
    check(u.mu_max > 0 && u.mu_max < std::numbers::pi / 2, errors,
          "uav.mu_max_deg: bank angle bound must lie in (0, 90) deg, got " + fmt(u.mu_max / kDeg));
    check(u.v_min > 0 && u.v_min < u.v_max, errors, "uav.v_min_mps/v_max_mps: require 0 < v_min < v_max");
    check(u.p_min < u.p_max, errors, "uav.p_min_w/p_max_w: require p_min < p_max");
    check(u.p_min >= 0, errors, "uav.p_min_w: must be >= 0");

    check(c.v_n_mps > 0, errors, "normalization.v_n_mps: must be > 0");
    check(c.rho_air > 0, errors, "normalization.rho_air_kg_m3: must be > 0");
    check(c.g > 0, errors, "normalization.g_m_s2: must be > 0");

    check(c.wind.w_m0_mps >= 0, errors, "wind.w_m0_mps: must be >= 0");
    check(!c.wind.omega_m.empty(), errors, "wind.omega_m_per_norm_length: sweep list must be non-empty");
    for (std::size_t i = 0; i < c.wind.omega_m.size(); ++i) {
        check(std::isfinite(c.wind.omega_m[i]) && c.wind.omega_m[i] >= 0, errors,
              "wind.omega_m_per_norm_length[" + std::to_string(i) + "]: must be finite and >= 0");
    }

    check(c.gains.k_v > 0, errors, "tracking.k_v_per_s: must be > 0");
    check(c.gains.k_psi > 0, errors, "tracking.k_psi_per_s: must be > 0");
    check(c.gains.k_gamma > 0, errors, "tracking.k_gamma_per_s: must be > 0");

    const auto& g = c.guidance;
    check(g.dt_s > 0, errors, "guidance.dt_s: must be > 0");
    check(g.dv_max_mps > 0, errors, "guidance.dv_max: must be > 0");
    check(g.dpsi_max_deg > 0, errors, "guidance.dpsi_max_deg: must be > 0");
    check(g.epsilon > 0, errors, "guidance.epsilon: must be > 0");
    check(g.eta > 0 && g.eta <= 1, errors, "guidance.eta: must lie in (0, 1]");
    check(g.v_min_mps > 0 && g.v_min_mps < g.v_max_mps, errors,
          "guidance.v_min_mps/v_max_mps: require 0 < v_min < v_max");
    check(g.v_min_mps >= u.v_min && g.v_max_mps <= u.v_max, errors,
          "guidance.v_min_mps/v_max_mps: airspeed box must lie within the vehicle's [v_min, v_max]");
    if (g.psi_min_deg && g.psi_max_deg) {
        check(*g.psi_min_deg < *g.psi_max_deg, errors, "guidance.psi_min_deg/psi_max_deg: require min < max");
    }

    const auto& s = c.simulation;
    check(s.steps_per_update >= 1, errors, "simulation.steps_per_update: must be >= 1");
    check(s.num_updates >= 1, errors, "simulation.num_updates: must be >= 1");
    if (s.dpsi0_deg > 0) {
        const double n = 360.0 / s.dpsi0_deg;
        check(std::abs(n - std::round(n)) < 1e-9, errors, "simulation.dpsi0_deg: must divide 360");
    } else {
        errors.push_back("simulation.dpsi0_deg: must be > 0");
    }

    check(!c.strategies.empty(), errors, "strategies: list must be non-empty");
    std::set<guidance::StrategyKind> seen;
    for (auto k : c.strategies) {
        check(k != guidance::StrategyKind::Reference, errors,
              "strategies: 'reference' is always run and must not be listed");
        check(seen.insert(k).second, errors, "strategies: duplicate '" + std::string(guidance::to_string(k)) + "'");
    }

    if (!errors.empty()) return;

    // Achievability of the configured increments at the loiter speed.
    const auto ctx = c.norm_context();
    const double v_star = guidance::optimal_loiter_speed(ctx);
    const double v_star_mps = ctx.to_mps(v_star);
    check(v_star_mps >= g.v_min_mps && v_star_mps <= g.v_max_mps, errors,
          "guidance.v_min_mps/v_max_mps: box must contain the loiter speed " + fmt(v_star_mps) + " m/s");
    const double dt_bar = ctx.to_t_bar(g.dt_s);
    dynamics::State at_loiter;
    at_loiter.v_bar = v_star;
    const auto bounds = guidance::guidance_limit_bounds(at_loiter, ctx, dt_bar);
    const double dv_bar = ctx.to_v_bar(g.dv_max_mps);
    check(dv_bar <= bounds.dv_max_bound, errors,
          "guidance.dv_max: " + fmt(dv_bar) + " (normalized) exceeds the excess-power bound " +
              fmt(bounds.dv_max_bound) + " at the loiter speed");
    const double dpsi = g.dpsi_max_deg * kDeg;
    check(dpsi <= bounds.dpsi_max_bound, errors,
          "guidance.dpsi_max_deg: " + fmt(g.dpsi_max_deg) + " deg exceeds the bank-authority bound " +
              fmt(bounds.dpsi_max_bound / kDeg) + " deg at the loiter speed");
}

}  // namespace

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat format_from_string(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw DomainError("unknown output format '" + std::string(s) + "' (expected csv or json)");
}

dynamics::NormContext ExperimentConfig::norm_context() const {
    return dynamics::build_norm_context(uav, v_n_mps, rho_air, g);
}

guidance::GuidanceLimits ExperimentConfig::guidance_limits(const dynamics::NormContext& ctx) const {
    guidance::GuidanceLimits l;
    l.dv_max = ctx.to_v_bar(guidance.dv_max_mps);
    l.dpsi_max = guidance.dpsi_max_deg * kDeg;
    l.v_bar_min = ctx.to_v_bar(guidance.v_min_mps);
    l.v_bar_max = ctx.to_v_bar(guidance.v_max_mps);
    if (guidance.psi_min_deg) l.psi_min = *guidance.psi_min_deg * kDeg;
    if (guidance.psi_max_deg) l.psi_max = *guidance.psi_max_deg * kDeg;
    l.epsilon = guidance.epsilon;
    l.eta = guidance.eta;
    l.dt_bar = ctx.to_t_bar(guidance.dt_s);
    return l;
}

wind::WindFieldSpec ExperimentConfig::wind_spec(double omega_m) const {
    wind::WindFieldSpec s;
    s.w_m0 = wind.w_m0_mps;
    s.a_x = wind.a_x;
    s.a_y = wind.a_y;
    s.omega_mx = omega_m;
    s.omega_my = omega_m;
    s.psi_w = wind.psi_w_deg * kDeg;
    return s;
}

sim::EpisodeConfig ExperimentConfig::episode_template(guidance::StrategyKind strategy,
                                                      const dynamics::NormContext& ctx) const {
    sim::EpisodeConfig e;
    e.initial = sim::initial_trim_state(0.0, ctx, ctx.to_length_bar(simulation.h0_m));
    e.strategy = strategy;
    e.update_interval_s = guidance.dt_s;
    e.steps_per_update = simulation.steps_per_update;
    e.num_updates = simulation.num_updates;
    e.limits = guidance_limits(ctx);
    e.gains = gains;
    return e;
}

ExperimentConfig default_experiment_config() {
    ExperimentConfig c;
    // 12 log-spaced frequencies over three decades, 0.01 .. 10 rad per normalized length
    for (int i = 0; i < 12; ++i) c.wind.omega_m.push_back(0.01 * std::pow(1000.0, i / 11.0));
    c.strategies = {guidance::StrategyKind::AirspeedOnly, guidance::StrategyKind::HeadingOnly,
                    guidance::StrategyKind::Combined};
    return c;
}

ExperimentConfig validate_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("<root>: JSON parse error: ") + e.what()});
    }

    std::vector<std::string> errors;
    ExperimentConfig c = default_experiment_config();
    Section top(&root, "", errors);

    {
        Section s = top.child("uav");
        s.number("mass_kg", c.uav.mass);
        s.number("wing_area_m2", c.uav.wing_area);
        s.number("c_d0", c.uav.c_d0);
        s.number("e_max", c.uav.e_max);
        s.number("p_max_w", c.uav.p_max);
        s.number("p_min_w", c.uav.p_min);
        s.number("v_max_mps", c.uav.v_max);
        s.number("v_min_mps", c.uav.v_min);
        s.number("c_l_max", c.uav.c_l_max);
        s.number("c_l_min", c.uav.c_l_min);
        double mu_deg = c.uav.mu_max / kDeg;
        s.number("mu_max_deg", mu_deg);
        c.uav.mu_max = mu_deg * kDeg;
        s.reject_unknown();
    }
    {
        Section s = top.child("normalization");
        s.number("v_n_mps", c.v_n_mps);
        s.number("rho_air_kg_m3", c.rho_air);
        s.number("g_m_s2", c.g);
        s.reject_unknown();
    }
    {
        Section s = top.child("wind");
        s.number("w_m0_mps", c.wind.w_m0_mps);
        s.number("a_x", c.wind.a_x);
        s.number("a_y", c.wind.a_y);
        s.number("psi_w_deg", c.wind.psi_w_deg);
        if (const json* list = s.take("omega_m_per_norm_length")) {
            if (!list->is_array()) {
                errors.push_back("wind.omega_m_per_norm_length: expected an array of numbers");
            } else {
                c.wind.omega_m.clear();
                for (std::size_t i = 0; i < list->size(); ++i) {
                    if (!(*list)[i].is_number()) {
                        errors.push_back("wind.omega_m_per_norm_length[" + std::to_string(i) + "]: expected a number");
                    } else {
                        c.wind.omega_m.push_back((*list)[i].get<double>());
                    }
                }
            }
        }
        s.reject_unknown();
    }
    {
        Section s = top.child("tracking");
        s.number("k_v_per_s", c.gains.k_v);
        s.number("k_psi_per_s", c.gains.k_psi);
        s.number("k_gamma_per_s", c.gains.k_gamma);
        s.reject_unknown();
    }
    {
        Section s = top.child("guidance");
        s.number("dt_s", c.guidance.dt_s);
        if (s.has("dv_max_fps") && s.has("dv_max_mps")) {
            errors.push_back("guidance: give only one of dv_max_fps, dv_max_mps");
        }
        if (s.has("dv_max_fps")) {
            double fps = 0.0;
            s.number("dv_max_fps", fps);
            c.guidance.dv_max_mps = fps * kMetersPerFoot;
        }
        s.number("dv_max_mps", c.guidance.dv_max_mps);
        s.number("dpsi_max_deg", c.guidance.dpsi_max_deg);
        s.number("v_min_mps", c.guidance.v_min_mps);
        s.number("v_max_mps", c.guidance.v_max_mps);
        s.optional_number("psi_min_deg", c.guidance.psi_min_deg);
        s.optional_number("psi_max_deg", c.guidance.psi_max_deg);
        s.number("epsilon", c.guidance.epsilon);
        s.number("eta", c.guidance.eta);
        s.reject_unknown();
    }
    {
        Section s = top.child("simulation");
        s.integer("steps_per_update", c.simulation.steps_per_update);
        s.integer("num_updates", c.simulation.num_updates);
        s.number("dpsi0_deg", c.simulation.dpsi0_deg);
        s.number("h0_m", c.simulation.h0_m);
        s.reject_unknown();
    }
    if (const json* list = top.take("strategies")) {
        if (!list->is_array()) {
            errors.push_back("strategies: expected an array of names");
        } else {
            c.strategies.clear();
            for (std::size_t i = 0; i < list->size(); ++i) {
                const auto& item = (*list)[i];
                try {
                    if (!item.is_string()) throw DomainError("expected a strategy name");
                    c.strategies.push_back(guidance::strategy_from_string(item.get<std::string>()));
                } catch (const DomainError& e) {
                    errors.push_back("strategies[" + std::to_string(i) + "]: " + e.what());
                }
            }
        }
    }
    {
        Section s = top.child("output");
        s.string("path", c.output_path);
        std::string format(to_string(c.output_format));
        s.string("format", format);
        try {
            c.output_format = format_from_string(format);
        } catch (const DomainError& e) {
            errors.push_back(std::string("output.format: ") + e.what());
        }
        s.reject_unknown();
    }
    top.reject_unknown();

    // fields that failed to parse kept their defaults, so the semantic checks still apply
    validate_semantics(c, errors);
    if (!errors.empty()) throw ConfigError(std::move(errors));
    return c;
}

std::vector<std::string> config_warnings(const ExperimentConfig& cfg) {
    std::vector<std::string> out;
    if (std::abs(cfg.wind.a_x) + std::abs(cfg.wind.a_y) > 1.0) {
        out.push_back("wind.a_x/a_y: |a_x| + |a_y| > 1 allows a negative wind magnitude (direction reversal)");
    }
    return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return validate_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
    json j;
    j["uav"] = {{"mass_kg", c.uav.mass},       {"wing_area_m2", c.uav.wing_area},
                {"c_d0", c.uav.c_d0},          {"e_max", c.uav.e_max},
                {"p_max_w", c.uav.p_max},      {"p_min_w", c.uav.p_min},
                {"v_max_mps", c.uav.v_max},    {"v_min_mps", c.uav.v_min},
                {"c_l_max", c.uav.c_l_max},    {"c_l_min", c.uav.c_l_min},
                {"mu_max_deg", c.uav.mu_max / kDeg}};
    j["normalization"] = {{"v_n_mps", c.v_n_mps}, {"rho_air_kg_m3", c.rho_air}, {"g_m_s2", c.g}};
    j["wind"] = {{"w_m0_mps", c.wind.w_m0_mps},
                 {"a_x", c.wind.a_x},
                 {"a_y", c.wind.a_y},
                 {"psi_w_deg", c.wind.psi_w_deg},
                 {"omega_m_per_norm_length", c.wind.omega_m}};
    j["tracking"] = {{"k_v_per_s", c.gains.k_v}, {"k_psi_per_s", c.gains.k_psi}, {"k_gamma_per_s", c.gains.k_gamma}};
    json g = {{"dt_s", c.guidance.dt_s},
              {"dv_max_mps", c.guidance.dv_max_mps},
              {"dpsi_max_deg", c.guidance.dpsi_max_deg},
              {"v_min_mps", c.guidance.v_min_mps},
              {"v_max_mps", c.guidance.v_max_mps},
              {"epsilon", c.guidance.epsilon},
              {"eta", c.guidance.eta}};
    if (c.guidance.psi_min_deg) g["psi_min_deg"] = *c.guidance.psi_min_deg;
    if (c.guidance.psi_max_deg) g["psi_max_deg"] = *c.guidance.psi_max_deg;
    j["guidance"] = g;
    j["simulation"] = {{"steps_per_update", c.simulation.steps_per_update},
                       {"num_updates", c.simulation.num_updates},
                       {"dpsi0_deg", c.simulation.dpsi0_deg},
                       {"h0_m", c.simulation.h0_m}};
    json strategies = json::array();
    for (auto k : c.strategies) strategies.push_back(std::string(guidance::to_string(k)));
    j["strategies"] = strategies;
    j["output"] = {{"path", c.output_path}, {"format", std::string(to_string(c.output_format))}};
    return j.dump(2) + "\n";
}

}  // namespace windguide::harness
