#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "windguide/errors.hpp"
#include "windguide/harness.hpp"

namespace windguide::harness {

using json = nlohmann::json;

namespace {

constexpr std::string_view kCsvHeader = "omega_m,strategy,p_ref_avg,p_strategy_avg,benefit,n_headings,n_invalid";

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON has no NaN; non-finite values become null.
std::string json_number(double v) { return std::isfinite(v) ? g17(v) : std::string("null"); }

double to_double(const json& v) { return v.is_null() ? std::nan("") : v.get<double>(); }

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::string format_results(const std::vector<BenefitRow>& rows, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out(kCsvHeader);
        out += '\n';
        for (const auto& r : rows) {
            out += g17(r.omega_m) + ',' + std::to_string(r.strategy) + ',' + g17(r.p_ref_avg) + ',' +
                   g17(r.p_strategy_avg) + ',' + g17(r.benefit) + ',' + std::to_string(r.n_headings) + ',' +
                   std::to_string(r.n_invalid) + '\n';
        }
        return out;
    }

    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += i == 0 ? "\n" : ",\n";
        out += "  {\"omega_m\": " + json_number(r.omega_m) + ", \"strategy\": " + std::to_string(r.strategy) +
               ", \"p_ref_avg\": " + json_number(r.p_ref_avg) + ", \"p_strategy_avg\": " +
               json_number(r.p_strategy_avg) + ", \"benefit\": " + json_number(r.benefit) +
               ", \"n_headings\": " + std::to_string(r.n_headings) + ", \"n_invalid\": " +
               std::to_string(r.n_invalid) + "}";
    }
    out += rows.empty() ? "]\n" : "\n]\n";
    return out;
}

std::vector<BenefitRow> parse_results(std::string_view text, OutputFormat format) {
    std::vector<BenefitRow> rows;
    if (format == OutputFormat::Csv) {
        std::istringstream in{std::string(text)};
        std::string line;
        if (!std::getline(in, line) || line != kCsvHeader) throw DomainError("CSV header mismatch");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto f = split(line, ',');
            if (f.size() != 7) throw DomainError("CSV row has " + std::to_string(f.size()) + " fields: " + line);
            BenefitRow r;
            r.omega_m = std::stod(f[0]);
            r.strategy = std::stoi(f[1]);
            r.p_ref_avg = std::stod(f[2]);
            r.p_strategy_avg = std::stod(f[3]);
            r.benefit = std::stod(f[4]);
            r.n_headings = std::stoul(f[5]);
            r.n_invalid = std::stoul(f[6]);
            rows.push_back(r);
        }
        return rows;
    }

    const json arr = json::parse(text);
    for (const auto& j : arr) {
        BenefitRow r;
        r.omega_m = j.at("omega_m").get<double>();
        r.strategy = j.at("strategy").get<int>();
        r.p_ref_avg = to_double(j.at("p_ref_avg"));
        r.p_strategy_avg = to_double(j.at("p_strategy_avg"));
        r.benefit = to_double(j.at("benefit"));
        r.n_headings = j.at("n_headings").get<std::size_t>();
        r.n_invalid = j.at("n_invalid").get<std::size_t>();
        rows.push_back(r);
    }
    return rows;
}

void emit_results(const std::vector<BenefitRow>& rows, OutputFormat format, const std::filesystem::path& path) {
    if (rows.empty()) throw DomainError("no result rows to emit");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << format_results(rows, format);
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string format_trajectory(const sim::EpisodeResult& result, const dynamics::NormContext& ctx) {
    constexpr double rad2deg = 180.0 / std::numbers::pi;
    std::string out = "t_s,v_bar,psi_deg,gamma_deg,x_bar,y_bar,h_bar,v_bar_c,psi_c_deg,p_bar,c_l,mu_deg\n";
    for (const auto& p : result.trajectory) {
        out += g17(ctx.to_seconds(p.t_bar)) + ',' + g17(p.state.v_bar) + ',' + g17(p.state.psi * rad2deg) + ',' +
               g17(p.state.gamma * rad2deg) + ',' + g17(p.state.x_bar) + ',' + g17(p.state.y_bar) + ',' +
               g17(p.state.h_bar) + ',' + g17(p.commands.v_bar_c) + ',' +
               g17(dynamics::wrap_two_pi(p.commands.psi_c) * rad2deg) + ',' + g17(p.power) + ',' +
               g17(p.controls.c_l) + ',' + g17(p.controls.mu * rad2deg) + '\n';
    }
    return out;
}

}  // namespace windguide::harness
