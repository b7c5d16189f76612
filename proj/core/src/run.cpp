#include "spinpair/run.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinpair/errors.hpp"
#include "spinpair/parallel.hpp"

namespace spinpair {

std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

Format format_from_string(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ConfigError("unknown format '" + name + "' (expected csv|json)");
}

OutputSet outputs_from_string(const std::string& csv_list) {
    OutputSet out;
    out.correlations = false;
    out.purity = false;
    std::stringstream ss(csv_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "correlations")
            out.correlations = true;
        else if (item == "elements")
            out.elements = true;
        else if (item == "purity")
            out.purity = true;
        else if (!item.empty())
            throw ConfigError("unknown output '" + item +
                              "' (expected correlations|elements|purity)");
    }
    // The base header always carries correlations and purity.
    out.correlations = true;
    out.purity = true;
    return out;
}

void finalize_defaults(RunConfig& cfg) {
    cfg.params.validate();
    const SpectralData sd = analytic_spectrum(cfg.params);
    const double min_freq = std::min(sd.mu, sd.eta);
    const double min_freq2 = std::min(sd.mu * sd.mu, sd.eta * sd.eta);

    if (cfg.dt_sample <= 0.0)
        cfg.dt_sample = min_freq > kDegenerateThreshold ? (M_PI / min_freq) / 64.0 : 0.01;
    if (cfg.t_max <= 0.0) {
        if (cfg.params.gamma > 0.0 && min_freq2 > kDegenerateThreshold)
            cfg.t_max = 25.0 / (2.0 * cfg.params.gamma * min_freq2);
        else
            cfg.t_max = 20.0;
    }

    if (!(cfg.t_max > 0.0)) throw ConfigError("t_max must be positive");
    if (!(cfg.dt_sample > 0.0 && cfg.dt_sample <= cfg.t_max))
        throw ConfigError("dt_sample must satisfy 0 < dt_sample <= t_max");
    if (!(cfg.ode_dt > 0.0 && cfg.ode_dt <= cfg.dt_sample))
        throw ConfigError("ode_dt must satisfy 0 < ode_dt <= dt_sample");
}

RunResult run_scenario(const RunConfig& cfg_in) {
    RunConfig cfg = cfg_in;
    finalize_defaults(cfg);

    const XState s0 = make_initial_state(cfg.scenario);
    const Operator4 rho0 = xstate_to_matrix(s0);

    const std::size_t n_samples =
        static_cast<std::size_t>(std::floor(cfg.t_max / cfg.dt_sample + 1e-9)) + 1;

    RunResult result;
    result.trajectory.params = cfg.params;
    result.trajectory.scenario = cfg.scenario;
    result.trajectory.method = cfg.engine;
    result.trajectory.times.resize(n_samples);
    result.trajectory.states.resize(n_samples);
    result.xstates.resize(n_samples);
    result.samples.resize(n_samples);

    for (std::size_t k = 0; k < n_samples; ++k)
        result.trajectory.times[k] = double(k) * cfg.dt_sample;

    if (cfg.engine == Engine::ode) {
        // Sequential by nature; one integration pass captures all samples.
        Trajectory traj =
            evolve_ode(rho0, cfg.params, cfg.t_max, cfg.ode_dt, cfg.dt_sample);
        if (traj.states.size() < n_samples)
            throw ConfigError("integration produced fewer samples than requested");
        for (std::size_t k = 0; k < n_samples; ++k) result.trajectory.states[k] = traj.states[k];
    } else {
        parallel_for(n_samples, cfg.jobs, [&](std::size_t k) {
            const double t = result.trajectory.times[k];
            switch (cfg.engine) {
                case Engine::spectral:
                    result.trajectory.states[k] = evolve_spectral(rho0, cfg.params, t);
                    break;
                case Engine::xclosed:
                    result.trajectory.states[k] =
                        xstate_to_matrix(evolve_xstate_closed(s0, cfg.params, t));
                    break;
                case Engine::kraus:
                    result.trajectory.states[k] = evolve_kraus(rho0, cfg.params, t, 1e-10);
                    break;
                case Engine::ode: break;  // handled above
            }
        });
    }

    parallel_for(n_samples, cfg.jobs, [&](std::size_t k) {
        const XState s = matrix_to_xstate(result.trajectory.states[k], 1e-8);
        result.xstates[k] = s;
        result.samples[k] = correlations_at(result.trajectory.times[k], s);
    });
    return result;
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> series_header(const OutputSet& outputs) {
    std::vector<std::string> h = {"t", "concurrence", "min_hs", "min_trace", "purity"};
    if (outputs.elements)
        for (const char* name :
             {"re_r14", "im_r14", "re_r23", "im_r23", "r11", "r22", "r33", "r44"})
            h.push_back(name);
    return h;
}

std::vector<double> series_row(const RunResult& r, std::size_t k, const OutputSet& outputs) {
    const CorrelationSample& s = r.samples[k];
    std::vector<double> row = {s.t, s.concurrence, s.min_hs, s.min_trace, s.purity};
    if (outputs.elements) {
        const XState& x = r.xstates[k];
        for (double v : {x.w.real(), x.w.imag(), x.z.real(), x.z.imag(), x.a, x.b, x.c, x.d})
            row.push_back(v);
    }
    return row;
}

}  // namespace

std::string render_series_csv(const RunResult& result, const OutputSet& outputs) {
    std::string out;
    const auto header = series_header(outputs);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (std::size_t k = 0; k < result.samples.size(); ++k) {
        const auto row = series_row(result, k, outputs);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_series_json(const RunResult& result, const OutputSet& outputs) {
    const auto header = series_header(outputs);
    std::string out = "[\n";
    for (std::size_t k = 0; k < result.samples.size(); ++k) {
        const auto row = series_row(result, k, outputs);
        out += "  {";
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ", ";
            out += '"' + header[i] + "\": " + format_number(row[i]);
        }
        out += k + 1 < result.samples.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

void write_text(const std::string& text, const std::string& path) {
    if (path == "-" || path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write failed for '" + path + "'");
}

void write_series(const RunResult& result, const RunConfig& cfg) {
    if (result.samples.empty()) throw ValidationError("refusing to write an empty series");
    const std::string text = cfg.format == Format::csv
                                 ? render_series_csv(result, cfg.outputs)
                                 : render_series_json(result, cfg.outputs);
    write_text(text, cfg.out_path);
}

SteadyReport steady_report(const RunConfig& cfg) {
    cfg.params.validate();
    const XState s0 = make_initial_state(cfg.scenario);
    SteadyReport report;
    report.state = steady_state(s0, cfg.params);
    report.sample = correlations_at(0.0, report.state);
    return report;
}

namespace {

std::vector<std::pair<std::string, double>> steady_fields(const SteadyReport& r) {
    return {{"r11", r.state.a},
            {"r22", r.state.b},
            {"r33", r.state.c},
            {"r44", r.state.d},
            {"re_r14", r.state.w.real()},
            {"im_r14", r.state.w.imag()},
            {"re_r23", r.state.z.real()},
            {"im_r23", r.state.z.imag()},
            {"concurrence", r.sample.concurrence},
            {"min_hs", r.sample.min_hs},
            {"min_trace", r.sample.min_trace},
            {"purity", r.sample.purity}};
}

}  // namespace

std::string render_steady(const SteadyReport& report, Format format) {
    const auto fields = steady_fields(report);
    std::string out;
    if (format == Format::csv) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += fields[i].first;
        }
        out += '\n';
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += format_number(fields[i].second);
        }
        out += '\n';
    } else {
        out = "{\n";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out += "  \"" + fields[i].first + "\": " + format_number(fields[i].second);
            out += i + 1 < fields.size() ? ",\n" : "\n";
        }
        out += "}\n";
    }
    return out;
}

std::string render_spectrum(const SpectralData& sd, Format format) {
    std::string out;
    if (format == Format::csv) {
        out = "k,energy,re_c00,im_c00,re_c01,im_c01,re_c10,im_c10,re_c11,im_c11\n";
        for (std::size_t k = 0; k < 4; ++k) {
            out += format_number(double(k + 1)) + ',' + format_number(sd.energies[k]);
            for (std::size_t i = 0; i < 4; ++i) {
                out += ',' + format_number(sd.vectors(i, k).real());
                out += ',' + format_number(sd.vectors(i, k).imag());
            }
            out += '\n';
        }
        return out;
    }
    out = "{\n";
    out += "  \"eta\": " + format_number(sd.eta) + ",\n";
    out += "  \"mu\": " + format_number(sd.mu) + ",\n";
    out += "  \"energies\": [";
    for (std::size_t k = 0; k < 4; ++k) {
        if (k) out += ", ";
        out += format_number(sd.energies[k]);
    }
    out += "],\n";
    out += "  \"n_plus\": " + format_number(sd.n_plus) + ",\n";
    out += "  \"n_minus\": " + format_number(sd.n_minus) + ",\n";
    out += "  \"m_plus\": " + format_number(sd.m_plus) + ",\n";
    out += "  \"m_minus\": " + format_number(sd.m_minus) + ",\n";
    out += std::string("  \"inner_degenerate\": ") + (sd.inner_degenerate() ? "true" : "false") +
           ",\n";
    out += std::string("  \"outer_degenerate\": ") + (sd.outer_degenerate() ? "true" : "false") +
           ",\n";
    out += "  \"vectors\": [\n";
    for (std::size_t k = 0; k < 4; ++k) {
        out += "    [";
        for (std::size_t i = 0; i < 4; ++i) {
            if (i) out += ", ";
            out += '[' + format_number(sd.vectors(i, k).real()) + ", " +
                   format_number(sd.vectors(i, k).imag()) + ']';
        }
        out += k < 3 ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

namespace {

void apply_axis(ModelParams& p, ScenarioSpec& sc, const std::string& name, double value) {
    if (name == "jp")
        p.j_plus = value;
    else if (name == "jm")
        p.j_minus = value;
    else if (name == "jz")
        p.j_z = value;
    else if (name == "dm")
        p.dm = value;
    else if (name == "field")
        p.field = value;
    else if (name == "lambda")
        p.inhomogeneity = value;
    else if (name == "gamma")
        p.gamma = value;
    else if (name == "p")
        sc.p = value;
    else
        throw ConfigError("unknown sweep parameter '" + name +
                          "' (expected jp|jm|jz|dm|field|lambda|gamma|p)");
}

}  // namespace

SweepResult sweep(const std::vector<SweepAxis>& axes, const RunConfig& base) {
    if (axes.empty()) throw ConfigError("sweep grid is empty");
    std::size_t n_cells = 1;
    for (const auto& axis : axes) {
        if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.name + "' has no values");
        n_cells *= axis.values.size();
    }

    SweepResult result;
    result.axes = axes;
    result.rows.resize(n_cells);

    parallel_for(n_cells, base.jobs, [&](std::size_t idx) {
        SweepRow& row = result.rows[idx];
        // Decode lexicographic index (last axis fastest).
        std::size_t rem = idx;
        row.cell.resize(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;) {
            const std::size_t m = axes[a].values.size();
            row.cell[a] = axes[a].values[rem % m];
            rem /= m;
        }

        RunConfig cfg = base;
        cfg.jobs = 1;  // parallelism lives at the cell level
        for (std::size_t a = 0; a < axes.size(); ++a)
            apply_axis(cfg.params, cfg.scenario, axes[a].name, row.cell[a]);

        try {
            const SteadyReport rep = steady_report(cfg);
            row.steady = rep.sample;
            const RunResult run = run_scenario(cfg);
            const EventReport events =
                detect_events(run.samples, cfg.event_tol, rep.sample.min_hs);
            row.sudden_death_time = events.sudden_death_time;
        } catch (const Error& e) {
            row.skipped_reason = e.what();
        }
    });
    return result;
}

std::string render_sweep_csv(const SweepResult& result) {
    std::string out;
    for (const auto& axis : result.axes) out += axis.name + ',';
    out += "steady_concurrence,steady_min_hs,steady_min_trace,sudden_death_time,skipped\n";
    for (const auto& row : result.rows) {
        for (double v : row.cell) out += format_number(v) + ',';
        if (row.steady) {
            out += format_number(row.steady->concurrence) + ',' +
                   format_number(row.steady->min_hs) + ',' +
                   format_number(row.steady->min_trace) + ',';
            out += row.sudden_death_time ? format_number(*row.sudden_death_time) : "";
            out += ',';
        } else {
            out += ",,,,";
        }
        out += row.skipped_reason;
        out += '\n';
    }
    return out;
}

std::string render_sweep_json(const SweepResult& result) {
    std::string out = "[\n";
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        const auto& row = result.rows[r];
        out += "  {";
        for (std::size_t a = 0; a < result.axes.size(); ++a)
            out += '"' + result.axes[a].name + "\": " + format_number(row.cell[a]) + ", ";
        if (row.steady) {
            out += "\"steady_concurrence\": " + format_number(row.steady->concurrence) + ", ";
            out += "\"steady_min_hs\": " + format_number(row.steady->min_hs) + ", ";
            out += "\"steady_min_trace\": " + format_number(row.steady->min_trace) + ", ";
            out += "\"sudden_death_time\": " +
                   (row.sudden_death_time ? format_number(*row.sudden_death_time)
                                          : std::string("null")) +
                   ", ";
        }
        out += "\"skipped\": \"" + row.skipped_reason + "\"}";
        out += r + 1 < result.rows.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

std::vector<FigurePanel> figure_presets(int figure, double j_z) {
    ModelParams base;
    base.j_plus = 1.0;
    base.j_minus = 0.5;
    base.j_z = j_z;

    auto make_panel = [&](const std::string& name, ScenarioKind kind, double p, double lambda,
                          double dm, double field, double gamma) {
        FigurePanel panel;
        panel.name = name;
        panel.config.params = base;
        panel.config.params.inhomogeneity = lambda;
        panel.config.params.dm = dm;
        panel.config.params.field = field;
        panel.config.params.gamma = gamma;
        panel.config.scenario.kind = kind;
        panel.config.scenario.p = p;
        panel.config.engine = Engine::spectral;
        panel.config.t_max = 20.0;
        panel.config.dt_sample = 0.1;
        return panel;
    };

    std::vector<FigurePanel> panels;
    const double gammas[3] = {0.05, 0.1, 0.3};
    switch (figure) {
        case 1:
            panels.push_back(make_panel("fig1_top", ScenarioKind::prod00, 1.0, 0.0, 0.0, 0.0, 0.05));
            panels.push_back(
                make_panel("fig1_bottom", ScenarioKind::prod00, 1.0, 0.5, 3.0, 1.0, 0.05));
            break;
        case 2:
            for (double g : gammas)
                panels.push_back(make_panel("fig2_gamma" + format_number(g),
                                            ScenarioKind::bell_phi, 1.0, 0.5, 1.0, 1.0, g));
            break;
        case 3:
            for (double g : gammas)
                panels.push_back(make_panel("fig3_gamma" + format_number(g),
                                            ScenarioKind::bell_psi, 1.0, 0.5, 1.0, 1.0, g));
            break;
        case 4:
            for (double g : gammas)
                panels.push_back(make_panel("fig4_gamma" + format_number(g),
                                            ScenarioKind::bell_phi, 0.6, 0.5, 1.0, 1.0, g));
            break;
        case 5:
            for (double g : gammas)
                panels.push_back(make_panel("fig5_gamma" + format_number(g),
                                            ScenarioKind::prod00, 0.6, 0.5, 1.0, 1.0, g));
            break;
        default: throw ConfigError("figure index must be 1..5");
    }
    return panels;
}

}  // namespace spinpair
