#include <cmath>

#include "windguide/errors.hpp"
#include "windguide/harness.hpp"

namespace windguide::harness {

namespace {

RowDiagnostics summarize(const sim::SweepResult& s) {
    RowDiagnostics d;
    d.singular_projections = s.singular_projections;
    d.adjustment_violations = s.audit.adjustment_violations;
    d.control_violations = s.audit.control_violations;
    d.adjustments_checked = s.audit.adjustments_checked;
    d.controls_checked = s.audit.controls_checked;
    d.saturation = s.saturation;
    return d;
}

}  // namespace

bool operator==(const BenefitRow& a, const BenefitRow& b) {
    auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
    return same(a.omega_m, b.omega_m) && a.strategy == b.strategy && same(a.p_ref_avg, b.p_ref_avg) &&
           same(a.p_strategy_avg, b.p_strategy_avg) && same(a.benefit, b.benefit) && a.n_headings == b.n_headings &&
           a.n_invalid == b.n_invalid;
}

ExperimentResult run_experiment(const ExperimentConfig& config, unsigned workers, const ProgressFn& progress) {
    const auto ctx = config.norm_context();
    const std::size_t total = config.wind.omega_m.size() * (config.strategies.size() + 1);
    std::size_t done = 0;
    auto tick = [&] {
        ++done;
        if (progress) progress(done, total);
    };

    ExperimentResult out;
    for (double omega : config.wind.omega_m) {
        const wind::SinusoidalWindField field(config.wind_spec(omega), ctx.v_n);

        const auto ref_tmpl = config.episode_template(guidance::StrategyKind::Reference, ctx);
        const sim::SweepResult ref =
            sim::heading_sweep_lenient(ref_tmpl, config.simulation.dpsi0_deg, field, ctx, workers);
        out.reference_diagnostics.push_back(summarize(ref));
        tick();

        for (auto strategy : config.strategies) {
            const auto tmpl = config.episode_template(strategy, ctx);
            const sim::SweepResult sweep =
                sim::heading_sweep_lenient(tmpl, config.simulation.dpsi0_deg, field, ctx, workers);

            BenefitRow row;
            row.omega_m = omega;
            row.strategy = static_cast<int>(strategy);
            row.p_ref_avg = ref.p_avg;
            row.p_strategy_avg = sweep.p_avg;
            row.n_headings = sweep.table.size();
            row.n_invalid = sweep.n_invalid + ref.n_invalid;
            // a sweep with aborted episodes does not produce a benefit value
            row.benefit = row.n_invalid == 0 ? sim::benefit(row.p_ref_avg, row.p_strategy_avg) : std::nan("");
            row.diagnostics = summarize(sweep);
            out.rows.push_back(row);
            tick();
        }
    }
    return out;
}

}  // namespace windguide::harness
