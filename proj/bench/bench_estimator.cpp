// Serial reference vs OpenMP kernels on the Monte-Carlo hot paths.
#include <benchmark/benchmark.h>

#include <cmath>

#include "d2d/ergodic.hpp"
#include "d2d/outage.hpp"

using namespace d2d;

namespace {

const NetworkConfig kGeo(20, 30, 12, 2.4, 1, 1);

OutagePlan td_plan(double snr_db) {
    const double p = std::pow(10.0, snr_db / 10) / kGeo.mu10();
    TdOutagePlan plan;
    const auto pol = td_policy_from_split({0.25, 0.25}, p, p, {0.5, 0.5, 0.5, 0.5});
    for (auto& e : plan.cases) e = {pol, RateTargets::split(2, 2, 0.5, 0.5)};
    plan.normalize();
    return plan;
}

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_AverageOutage(benchmark::State& state) {
    const auto plan = td_plan(20);
    const EstimatorConfig mc{1, 200000, 64};
    for (auto _ : state) benchmark::DoNotOptimize(average_outage(kGeo, plan, mc, mode(state)).pc.mean);
    state.SetItemsProcessed(state.iterations() * mc.samples);
}

void BM_CaseFrequency(benchmark::State& state) {
    const EstimatorConfig mc{1, 1000000, 64};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            estimate_bernoulli(
                mc, kGeo, [](const LinkState& ls) { return classify_case(ls) == TransmissionCase::CoopBoth; },
                mode(state))
                .mean);
    state.SetItemsProcessed(state.iterations() * mc.samples);
}

void BM_ErgodicBoundary(benchmark::State& state) {
    const NetworkConfig cfg = NetworkConfig::from_mean_gains(4, 1, 16, 2.4, 2, 2);
    const auto weights = weight_grid(5);
    const EstimatorConfig mc{1, 64, 64};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            ergodic_boundary(cfg, SchemeKind::TdCooperative, weights, mc, {}, mode(state)).front().value.mean);
    state.SetItemsProcessed(state.iterations() * mc.samples);
}

}  // namespace

BENCHMARK(BM_AverageOutage)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CaseFrequency)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ErgodicBoundary)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
