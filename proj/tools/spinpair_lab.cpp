// Command-line front end: scenario runs, parameter sweeps, bundled figure
// series, steady-state reports, spectrum dumps and state validation.
//
// Exit codes: 0 success, 2 configuration error, 3 physics-domain error
// (singular parameters, invalid states), 4 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinpair/analysis.hpp"
#include "spinpair/errors.hpp"
#include "spinpair/qmath.hpp"
#include "spinpair/run.hpp"

using namespace spinpair;

namespace {

// Raw option values: every field optional so config-file settings survive
// unless an explicit flag overrides them.
struct Options {
    std::optional<std::string> scenario;
    std::optional<double> p;
    std::optional<std::string> raw_state;
    std::optional<double> jp, jm, jz, dm, field, lambda, gamma;
    std::optional<std::string> engine;
    std::optional<double> t_max, dt_sample, ode_dt;
    std::optional<std::string> outputs, format, out;
    std::optional<unsigned> jobs;
};

double parse_double(const std::string& text, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse number '" + text + "' for '" + key + "'");
    }
}

XState parse_raw_state(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_double(item, "raw-state"));
    if (v.size() != 4 && v.size() != 8)
        throw ConfigError("raw-state needs a,b,c,d[,w_re,w_im,z_re,z_im]");
    XState s;
    s.a = v[0];
    s.b = v[1];
    s.c = v[2];
    s.d = v[3];
    if (v.size() == 8) {
        s.w = cplx(v[4], v[5]);
        s.z = cplx(v[6], v[7]);
    }
    return s;
}

void apply_flat_key(Options& opt, const std::string& key, const std::string& value) {
    auto num = [&] { return parse_double(value, key); };
    if (key == "scenario") opt.scenario = value;
    else if (key == "p") opt.p = num();
    else if (key == "raw-state" || key == "raw_state") opt.raw_state = value;
    else if (key == "jp") opt.jp = num();
    else if (key == "jm") opt.jm = num();
    else if (key == "jz") opt.jz = num();
    else if (key == "dm") opt.dm = num();
    else if (key == "field") opt.field = num();
    else if (key == "lambda") opt.lambda = num();
    else if (key == "gamma") opt.gamma = num();
    else if (key == "engine") opt.engine = value;
    else if (key == "t-max" || key == "t_max") opt.t_max = num();
    else if (key == "dt-sample" || key == "dt_sample") opt.dt_sample = num();
    else if (key == "ode-dt" || key == "ode_dt") opt.ode_dt = num();
    else if (key == "outputs") opt.outputs = value;
    else if (key == "format") opt.format = value;
    else if (key == "out" || key == "out_path") opt.out = value;
    else if (key == "jobs") opt.jobs = static_cast<unsigned>(num());
    else throw ConfigError("unknown config key '" + key + "'");
}

void load_json_config(Options& opt, const nlohmann::json& j) {
    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (p.contains("j_plus")) opt.jp = p.at("j_plus").get<double>();
        if (p.contains("j_minus")) opt.jm = p.at("j_minus").get<double>();
        if (p.contains("j_z")) opt.jz = p.at("j_z").get<double>();
        if (p.contains("dm")) opt.dm = p.at("dm").get<double>();
        if (p.contains("field")) opt.field = p.at("field").get<double>();
        if (p.contains("inhomogeneity")) opt.lambda = p.at("inhomogeneity").get<double>();
        if (p.contains("gamma")) opt.gamma = p.at("gamma").get<double>();
    }
    if (j.contains("scenario")) {
        const auto& s = j.at("scenario");
        if (s.contains("kind")) opt.scenario = s.at("kind").get<std::string>();
        if (s.contains("p")) opt.p = s.at("p").get<double>();
        if (s.contains("raw_state")) {
            const auto& r = s.at("raw_state");
            std::ostringstream os;
            os << r.value("a", 0.0) << ',' << r.value("b", 0.0) << ',' << r.value("c", 0.0) << ','
               << r.value("d", 0.0) << ',' << r.value("w_re", 0.0) << ',' << r.value("w_im", 0.0)
               << ',' << r.value("z_re", 0.0) << ',' << r.value("z_im", 0.0);
            opt.raw_state = os.str();
        }
    }
    if (j.contains("engine")) opt.engine = j.at("engine").get<std::string>();
    if (j.contains("t_max")) opt.t_max = j.at("t_max").get<double>();
    if (j.contains("dt_sample")) opt.dt_sample = j.at("dt_sample").get<double>();
    if (j.contains("ode_dt")) opt.ode_dt = j.at("ode_dt").get<double>();
    if (j.contains("outputs")) {
        std::string list;
        for (const auto& item : j.at("outputs")) {
            if (!list.empty()) list += ',';
            list += item.get<std::string>();
        }
        opt.outputs = list;
    }
    if (j.contains("format")) opt.format = j.at("format").get<std::string>();
    if (j.contains("out_path")) opt.out = j.at("out_path").get<std::string>();
    if (j.contains("jobs")) opt.jobs = j.at("jobs").get<unsigned>();
}

Options load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    const std::string text = buf.str();

    Options opt;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config file '" + path + "': " + e.what());
        }
        load_json_config(opt, j);
        return opt;
    }

    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) apply_flat_key(opt, key, value);
    }
    return opt;
}

void merge(Options& base, const Options& over) {
    auto pick = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    pick(base.scenario, over.scenario);
    pick(base.p, over.p);
    pick(base.raw_state, over.raw_state);
    pick(base.jp, over.jp);
    pick(base.jm, over.jm);
    pick(base.jz, over.jz);
    pick(base.dm, over.dm);
    pick(base.field, over.field);
    pick(base.lambda, over.lambda);
    pick(base.gamma, over.gamma);
    pick(base.engine, over.engine);
    pick(base.t_max, over.t_max);
    pick(base.dt_sample, over.dt_sample);
    pick(base.ode_dt, over.ode_dt);
    pick(base.outputs, over.outputs);
    pick(base.format, over.format);
    pick(base.out, over.out);
    pick(base.jobs, over.jobs);
}

RunConfig to_run_config(const Options& opt) {
    RunConfig cfg;
    if (opt.jp) cfg.params.j_plus = *opt.jp;
    if (opt.jm) cfg.params.j_minus = *opt.jm;
    if (opt.jz) cfg.params.j_z = *opt.jz;
    if (opt.dm) cfg.params.dm = *opt.dm;
    if (opt.field) cfg.params.field = *opt.field;
    if (opt.lambda) cfg.params.inhomogeneity = *opt.lambda;
    if (opt.gamma) cfg.params.gamma = *opt.gamma;
    if (opt.scenario) cfg.scenario.kind = scenario_from_string(*opt.scenario);
    if (opt.p) cfg.scenario.p = *opt.p;
    if (opt.raw_state) cfg.scenario.raw_state = parse_raw_state(*opt.raw_state);
    if (opt.engine) cfg.engine = engine_from_string(*opt.engine);
    if (opt.t_max) cfg.t_max = *opt.t_max;
    if (opt.dt_sample) cfg.dt_sample = *opt.dt_sample;
    if (opt.ode_dt) cfg.ode_dt = *opt.ode_dt;
    if (opt.outputs) cfg.outputs = outputs_from_string(*opt.outputs);
    if (opt.format) cfg.format = format_from_string(*opt.format);
    if (opt.out) cfg.out_path = *opt.out;
    if (opt.jobs) cfg.jobs = *opt.jobs;
    return cfg;
}

struct SubcommandBinding {
    Options flags;
    std::string config_path;

    void add_common(CLI::App* cmd) {
        auto opt = [cmd](const char* name, auto& slot, const char* desc) {
            cmd->add_option_function<std::decay_t<decltype(*slot)>>(
                name,
                [&slot](const auto& v) { slot = v; },
                desc);
        };
        cmd->add_option("--config", config_path,
                        "config file (flat key=value lines or a JSON object)");
        opt("--scenario", flags.scenario,
            "initial state: prod00|prod01|prod10|prod11|bell-phi|bell-psi|raw");
        opt("--p", flags.p, "mixing probability in [0,1]");
        opt("--raw-state", flags.raw_state, "raw X-state a,b,c,d[,w_re,w_im,z_re,z_im]");
        opt("--jp", flags.jp, "symmetric exchange J+ = (Jx+Jy)/2");
        opt("--jm", flags.jm, "antisymmetric exchange J- = (Jx-Jy)/2");
        opt("--jz", flags.jz, "z exchange Jz");
        opt("--dm", flags.dm, "Dzyaloshinskii-Moriya strength (z axis)");
        opt("--field", flags.field, "uniform magnetic field B");
        opt("--lambda", flags.lambda, "field inhomogeneity");
        opt("--gamma", flags.gamma, "intrinsic decoherence rate");
        opt("--engine", flags.engine, "evolution engine: spectral|xclosed|kraus|ode");
        opt("--t-max", flags.t_max, "evolution horizon");
        opt("--dt-sample", flags.dt_sample, "output sampling interval");
        opt("--ode-dt", flags.ode_dt, "integration step for the ode engine");
        opt("--outputs", flags.outputs, "comma list of correlations|elements|purity");
        opt("--format", flags.format, "output format: csv|json");
        opt("--out", flags.out, "output path ('-' for stdout)");
        opt("--jobs", flags.jobs, "worker threads (0 = all cores)");
    }

    RunConfig resolve() const {
        Options merged;
        if (!config_path.empty()) merged = load_config_file(config_path);
        merge(merged, flags);
        return to_run_config(merged);
    }
};

std::vector<SweepAxis> parse_sweep_axes(const std::vector<std::string>& specs) {
    std::vector<SweepAxis> axes;
    for (const std::string& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw ConfigError("sweep axis must look like name=v1,v2,... got '" + spec + "'");
        SweepAxis axis;
        axis.name = spec.substr(0, eq);
        std::stringstream ss(spec.substr(eq + 1));
        std::string item;
        while (std::getline(ss, item, ',')) axis.values.push_back(parse_double(item, axis.name));
        axes.push_back(std::move(axis));
    }
    return axes;
}

int run_app(int argc, char** argv) {
    CLI::App app{"two-qubit intrinsic-decoherence dynamics lab"};
    app.require_subcommand(1);

    SubcommandBinding spectrum_opts, evolve_opts, steady_opts, sweep_opts, validate_opts;
    std::vector<std::string> sweep_specs;
    int figure_index = 0;
    std::string figure_dir = ".";
    double figure_jz = 1.0;
    double validate_tol = 1e-9;

    CLI::App* spectrum = app.add_subcommand("spectrum", "print the Hamiltonian eigensystem");
    spectrum_opts.add_common(spectrum);

    CLI::App* evolve = app.add_subcommand("evolve", "sample a scenario's time evolution");
    evolve_opts.add_common(evolve);

    CLI::App* steady = app.add_subcommand("steady", "report the t->infinity state and measures");
    steady_opts.add_common(steady);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "steady-state table over a parameter grid");
    sweep_opts.add_common(sweep_cmd);
    sweep_cmd->add_option("--sweep", sweep_specs,
                          "grid axis name=v1,v2,... (repeatable; axes nest left to right)");

    CLI::App* figure = app.add_subcommand("figure", "write the bundled demo series 1..5");
    figure->add_option("index", figure_index, "figure index (1..5)")->required();
    figure->add_option("--out-dir", figure_dir, "directory for the generated CSV files");
    figure->add_option("--jz", figure_jz, "z exchange used by the presets");

    CLI::App* validate = app.add_subcommand("validate", "check a state against the density-matrix conditions");
    validate_opts.add_common(validate);
    validate->add_option("--tol", validate_tol, "validation tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (spectrum->parsed()) {
        const RunConfig cfg = spectrum_opts.resolve();
        cfg.params.validate();
        write_text(render_spectrum(analytic_spectrum(cfg.params), cfg.format), cfg.out_path);
        return 0;
    }

    if (evolve->parsed()) {
        const RunConfig cfg = evolve_opts.resolve();
        const RunResult result = run_scenario(cfg);
        write_series(result, cfg);
        return 0;
    }

    if (steady->parsed()) {
        const RunConfig cfg = steady_opts.resolve();
        write_text(render_steady(steady_report(cfg), cfg.format), cfg.out_path);
        return 0;
    }

    if (sweep_cmd->parsed()) {
        const RunConfig cfg = sweep_opts.resolve();
        const SweepResult result = sweep(parse_sweep_axes(sweep_specs), cfg);
        write_text(cfg.format == Format::csv ? render_sweep_csv(result)
                                             : render_sweep_json(result),
                   cfg.out_path);
        return 0;
    }

    if (figure->parsed()) {
        for (const FigurePanel& panel : figure_presets(figure_index, figure_jz)) {
            const RunResult result = run_scenario(panel.config);
            write_text(render_series_csv(result, panel.config.outputs),
                       figure_dir + "/" + panel.name + ".csv");
            std::cout << panel.name << ".csv\n";
        }
        return 0;
    }

    if (validate->parsed()) {
        const RunConfig cfg = validate_opts.resolve();
        XState state;
        if (cfg.scenario.kind == ScenarioKind::raw) {
            if (!cfg.scenario.raw_state) throw ConfigError("raw scenario requires --raw-state");
            state = *cfg.scenario.raw_state;  // deliberately unvalidated
        } else {
            state = make_initial_state(cfg.scenario);
        }
        const DensityReport report = validate_density(xstate_embed(state), validate_tol);
        std::cout << report.summary() << "\n";
        std::cout << "trace_error=" << format_number(report.trace_error)
                  << " hermiticity_error=" << format_number(report.hermiticity_error)
                  << " min_eigenvalue=" << format_number(report.min_eigenvalue) << "\n";
        return report.ok() ? 0 : 3;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SingularParameterError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const StabilityError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const TruncationError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    }
}
