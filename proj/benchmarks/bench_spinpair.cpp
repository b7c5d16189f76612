#include <benchmark/benchmark.h>

#include <cmath>

#include "spinpair/evolve.hpp"
#include "spinpair/measures.hpp"
#include "spinpair/qmath.hpp"
#include "spinpair/run.hpp"

using namespace spinpair;

namespace {

ModelParams reference_params() {
    ModelParams p;
    p.j_plus = 1.0;
    p.j_minus = 0.5;
    p.j_z = 1.0;
    p.inhomogeneity = 0.5;
    p.dm = 1.0;
    p.field = 1.0;
    p.gamma = 0.05;
    return p;
}

Operator4 bell_state() {
    return xstate_to_matrix(make_initial_state({ScenarioKind::bell_phi, 1.0, {}}));
}

void BM_hermitian_eigendecompose(benchmark::State& state) {
    const Operator4 h = build_hamiltonian(reference_params());
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigendecompose(h));
}
BENCHMARK(BM_hermitian_eigendecompose);

void BM_evolve_spectral(benchmark::State& state) {
    const Operator4 rho0 = bell_state();
    const ModelParams p = reference_params();
    double t = 0.0;
    for (auto _ : state) {
        t += 0.1;
        benchmark::DoNotOptimize(evolve_spectral(rho0, p, t));
    }
}
BENCHMARK(BM_evolve_spectral);

void BM_evolve_xclosed(benchmark::State& state) {
    const XState s0 = make_initial_state({ScenarioKind::bell_phi, 1.0, {}});
    const ModelParams p = reference_params();
    double t = 0.0;
    for (auto _ : state) {
        t += 0.1;
        benchmark::DoNotOptimize(evolve_xstate_closed(s0, p, t));
    }
}
BENCHMARK(BM_evolve_xclosed);

void BM_evolve_kraus(benchmark::State& state) {
    const Operator4 rho0 = bell_state();
    const ModelParams p = reference_params();
    for (auto _ : state) benchmark::DoNotOptimize(evolve_kraus(rho0, p, 10.0, 1e-10));
}
BENCHMARK(BM_evolve_kraus);

void BM_ode_second(benchmark::State& state) {
    const Operator4 rho0 = bell_state();
    const ModelParams p = reference_params();
    for (auto _ : state) benchmark::DoNotOptimize(evolve_ode(rho0, p, 1.0, 1e-3, 1.0));
}
BENCHMARK(BM_ode_second);

void BM_concurrence_general(benchmark::State& state) {
    const Operator4 rho = bell_state();
    for (auto _ : state) benchmark::DoNotOptimize(concurrence_general(rho));
}
BENCHMARK(BM_concurrence_general);

void BM_min_trace_closed(benchmark::State& state) {
    const Operator4 rho = evolve_spectral(bell_state(), reference_params(), 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(min_trace_closed(rho));
}
BENCHMARK(BM_min_trace_closed);

void BM_min_numeric_grid(benchmark::State& state) {
    const Operator4 rho = bell_state();  // degenerate marginal forces the grid search
    for (auto _ : state) benchmark::DoNotOptimize(min_numeric(rho, MinNorm::hs));
}
BENCHMARK(BM_min_numeric_grid);

void BM_run_scenario_spectral(benchmark::State& state) {
    RunConfig cfg;
    cfg.params = reference_params();
    cfg.scenario = {ScenarioKind::bell_phi, 1.0, {}};
    cfg.engine = Engine::spectral;
    cfg.t_max = 20.0;
    cfg.dt_sample = 0.05;
    cfg.jobs = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_scenario(cfg));
}
BENCHMARK(BM_run_scenario_spectral);

}  // namespace

BENCHMARK_MAIN();
