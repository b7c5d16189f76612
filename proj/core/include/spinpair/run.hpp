#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinpair/analysis.hpp"
#include "spinpair/evolve.hpp"
#include "spinpair/measures.hpp"
#include "spinpair/model.hpp"
#include "spinpair/states.hpp"

namespace spinpair {

enum class Format { csv, json };

std::string to_string(Format f);
Format format_from_string(const std::string& name);

/// Columns emitted per sample. Correlations and purity form the fixed base
/// header `t,concurrence,min_hs,min_trace,purity`; `elements` appends
/// `re_r14,im_r14,re_r23,im_r23,r11,r22,r33,r44`.
struct OutputSet {
    bool correlations = true;
    bool elements = false;
    bool purity = true;
};

OutputSet outputs_from_string(const std::string& csv_list);

struct RunConfig {
    ModelParams params;
    ScenarioSpec scenario;
    Engine engine = Engine::spectral;
    double t_max = 0.0;      // <= 0: default 25/(2 gamma min(mu^2, eta^2)), else 20
    double dt_sample = 0.0;  // <= 0: default (pi / min(mu, eta)) / 64, else 0.01
    double ode_dt = 1e-3;
    OutputSet outputs;
    Format format = Format::csv;
    std::string out_path = "-";
    unsigned jobs = 0;  // 0 = available parallelism
    double event_tol = 1e-9;
};

/// Fill the t_max/dt_sample defaults from the model frequencies and check
/// the config invariants (throws ConfigError).
void finalize_defaults(RunConfig& cfg);

struct RunResult {
    Trajectory trajectory;
    std::vector<XState> xstates;
    std::vector<CorrelationSample> samples;
};

/// Sample the scenario's evolution at t = 0, dt_sample, ..., t_max with the
/// configured engine, evaluating all correlation measures at each sample.
/// Deterministic for a given config regardless of worker count.
RunResult run_scenario(const RunConfig& cfg);

/// Formatted 12-significant-digit float, locale independent ("-0" normalized).
std::string format_number(double v);

std::string render_series_csv(const RunResult& result, const OutputSet& outputs);
std::string render_series_json(const RunResult& result, const OutputSet& outputs);

/// Write the sampled series to out_path ("-" = stdout). Throws IoError on
/// filesystem failure, ValidationError on an empty series.
void write_series(const RunResult& result, const RunConfig& cfg);

/// Steady-state report: state elements plus all three measures and purity.
struct SteadyReport {
    XState state;
    CorrelationSample sample;
};

SteadyReport steady_report(const RunConfig& cfg);
std::string render_steady(const SteadyReport& report, Format format);

/// Eigensystem report for the configured parameters.
std::string render_spectrum(const SpectralData& sd, Format format);

/// One axis of a parameter sweep: parameter name plus the values it takes.
/// Supported names: jp, jm, jz, dm, field, lambda, gamma, p.
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepRow {
    std::vector<double> cell;  // one value per axis, lexicographic order
    std::optional<CorrelationSample> steady;  // absent when skipped
    std::optional<double> sudden_death_time;
    std::string skipped_reason;  // empty when the cell ran
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<SweepRow> rows;
};

/// Evaluate the steady state and sudden-death time on every grid cell.
/// Rows come out in lexicographic grid order regardless of execution order;
/// cells violating the steady-state preconditions are marked skipped.
SweepResult sweep(const std::vector<SweepAxis>& axes, const RunConfig& base);

std::string render_sweep_csv(const SweepResult& result);
std::string render_sweep_json(const SweepResult& result);

/// Bundled demo parameter sets, one panel per (scenario, gamma) combination.
struct FigurePanel {
    std::string name;  // e.g. "fig2_gamma0.05"
    RunConfig config;
};

std::vector<FigurePanel> figure_presets(int figure, double j_z = 1.0);

/// Write a string to a file (or stdout for "-"); IoError on failure.
void write_text(const std::string& text, const std::string& path);

}  // namespace spinpair
