#include <benchmark/benchmark.h>

#include "windguide/harness.hpp"

using namespace windguide;

namespace {

const dynamics::NormContext& ctx() {
    static const auto c = dynamics::build_norm_context(dynamics::scan_eagle_params());
    return c;
}

guidance::InsituWind sample_wind() {
    guidance::InsituWind w;
    w.w_x0 = 0.4;
    w.w_y0 = 0.05;
    w.g_xx = 0.03;
    w.g_xy = -0.02;
    w.g_yx = 0.01;
    w.g_yy = 0.04;
    return w;
}

void BM_ProjectedPower(benchmark::State& state) {
    const auto w = sample_wind();
    double dv = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(guidance::projected_power(1.08, 0.7, dv, 0.1, w, 4.9, ctx()));
        dv += 1e-9;
    }
}
BENCHMARK(BM_ProjectedPower);

void BM_Adjust(benchmark::State& state) {
    const auto w = sample_wind();
    const auto cfg = harness::default_experiment_config();
    const auto limits = cfg.guidance_limits(ctx());
    for (auto _ : state) {
        benchmark::DoNotOptimize(guidance::adjust(guidance::StrategyKind::Combined, 1.08, 0.7, w, limits, ctx()));
    }
}
BENCHMARK(BM_Adjust);

void BM_WindSample(benchmark::State& state) {
    const auto cfg = harness::default_experiment_config();
    const wind::SinusoidalWindField f(cfg.wind_spec(0.1), ctx().v_n);
    wind::Position p{1.0, 2.0, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.sample(p, 0.0));
        p.x += 1e-6;
    }
}
BENCHMARK(BM_WindSample);

void BM_IntegrateStep(benchmark::State& state) {
    const auto cfg = harness::default_experiment_config();
    const wind::SinusoidalWindField f(cfg.wind_spec(0.1), ctx().v_n);
    auto s = sim::initial_trim_state(0.7, ctx());
    const tracking::Commands cmd{s.v_bar, 0.9, 0.0};
    for (auto _ : state) {
        const auto r = sim::integrate_step(s, cmd, f, 0.0, ctx(), {}, 0.098);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_IntegrateStep);

void BM_Episode(benchmark::State& state) {
    const auto cfg = harness::default_experiment_config();
    const wind::SinusoidalWindField f(cfg.wind_spec(0.1), ctx().v_n);
    auto ep = cfg.episode_template(static_cast<guidance::StrategyKind>(state.range(0)), ctx());
    for (auto _ : state) benchmark::DoNotOptimize(sim::run_episode(ep, f, ctx()).avg_power);
}
BENCHMARK(BM_Episode)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
