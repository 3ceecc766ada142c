#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ddparab/barenblatt.hpp"
#include "ddparab/exponents.hpp"
#include "ddparab/io.hpp"
#include "ddparab/regularity.hpp"
#include "ddparab/solver.hpp"
#include "ddparab/structure.hpp"

namespace ddparab {

enum class Command { Exponents, Sweep, Solve, Measure, Validate, Barenblatt };

inline const char* to_string(Command c) {
    switch (c) {
        case Command::Exponents: return "exponents";
        case Command::Sweep: return "sweep";
        case Command::Solve: return "solve";
        case Command::Measure: return "measure";
        case Command::Validate: return "validate";
        case Command::Barenblatt: return "barenblatt";
    }
    return "?";
}

inline Command command_from_string(const std::string& s) {
    if (s == "exponents") return Command::Exponents;
    if (s == "sweep") return Command::Sweep;
    if (s == "solve") return Command::Solve;
    if (s == "measure") return Command::Measure;
    if (s == "validate") return Command::Validate;
    if (s == "barenblatt") return Command::Barenblatt;
    throw ConfigError("unknown command: " + s);
}

struct SweepSpec {
    double m_min = 1.0, m_max = 4.0, m_step = 0.1;
    double p_min = 2.0, p_max = 4.0, p_step = 0.1;
    int n = 2;
    double q = kInf, r = kInf;
};

struct InitialSpec {
    std::string type = "zero";  // zero | constant | sin_pi | gaussian | table
    double value = 0.0;
    double amplitude = 1.0, center = 0.0, width = 0.1;
    std::vector<double> values;
};

struct SourceSpec {
    std::string type = "zero";  // zero | mms | table
    std::string name = "exp_sine";
    std::vector<double> times;
    std::vector<std::vector<double>> rows;
};

struct BcSpec {
    std::string type = "zero_flux";  // zero_flux | dirichlet
    double left = 0.0, right = 0.0;
};

struct SolveSpec {
    double x_min = 0.0, x_max = 1.0;
    int n_cells = 128;
    double t_end = 0.1;
    double cfl = 0.4;
    double eps_u = 1e-8, eps_g = 1e-8;
    std::optional<double> dt_max;
    int n_snapshots = 65;
    BcSpec bc;
    InitialSpec initial;
    SourceSpec source;
    std::string format = "csv";  // csv | binary
};

struct MeasureSpec {
    std::string input;
    double m = 1.0, p = 2.0;
    double lambda = 0.25;
    std::optional<double> rho0;      // default: quarter of the domain width
    std::optional<double> center_x;  // default: domain midpoint
    std::optional<double> center_t;  // default: final time
};

struct BarenblattSpec {
    std::vector<double> t_values = {0.25, 1.0, 4.0};
    int x_count = 201;
    std::optional<double> x_max;  // default: 1.05 * max support radius
};

struct ExperimentConfig {
    Command command = Command::Exponents;
    std::uint64_t seed = 0;
    std::string output_dir = ".";
    std::optional<ProblemParams> params;
    std::optional<double> alpha_hom;
    SweepSpec sweep;
    SolveSpec solve;
    MeasureSpec measure;
    BarenblattSpec barenblatt;
    std::optional<json> flux;  // validate: declarative flux (see flux_from_json)
};

// ---------------------------------------------------------------- JSON round trip

inline json config_to_json(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = to_string(c.command);
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    if (c.params) j["params"] = params_to_json(*c.params);
    if (c.alpha_hom) j["alpha_hom"] = *c.alpha_hom;
    if (c.command == Command::Sweep) {
        j["sweep"] = {{"m_min", c.sweep.m_min}, {"m_max", c.sweep.m_max},
                      {"m_step", c.sweep.m_step}, {"p_min", c.sweep.p_min},
                      {"p_max", c.sweep.p_max}, {"p_step", c.sweep.p_step},
                      {"n", c.sweep.n}, {"q", exponent_to_json(c.sweep.q)},
                      {"r", exponent_to_json(c.sweep.r)}};
    }
    if (c.command == Command::Solve) {
        const auto& s = c.solve;
        json js{{"x_min", s.x_min}, {"x_max", s.x_max}, {"n_cells", s.n_cells},
                {"t_end", s.t_end}, {"cfl", s.cfl}, {"eps_u", s.eps_u},
                {"eps_g", s.eps_g}, {"n_snapshots", s.n_snapshots},
                {"format", s.format}};
        if (s.dt_max) js["dt_max"] = *s.dt_max;
        js["bc"] = {{"type", s.bc.type}, {"left", s.bc.left}, {"right", s.bc.right}};
        json ji{{"type", s.initial.type}};
        if (s.initial.type == "constant") ji["value"] = s.initial.value;
        if (s.initial.type == "gaussian") {
            ji["amplitude"] = s.initial.amplitude;
            ji["center"] = s.initial.center;
            ji["width"] = s.initial.width;
        }
        if (s.initial.type == "table") ji["values"] = s.initial.values;
        js["initial"] = ji;
        json jf{{"type", s.source.type}};
        if (s.source.type == "mms") jf["name"] = s.source.name;
        if (s.source.type == "table") {
            jf["times"] = s.source.times;
            jf["rows"] = s.source.rows;
        }
        js["source"] = jf;
        j["solver"] = js;
    }
    if (c.command == Command::Measure) {
        json jm{{"input", c.measure.input}, {"m", c.measure.m}, {"p", c.measure.p},
                {"lambda", c.measure.lambda}};
        if (c.measure.rho0) jm["rho0"] = *c.measure.rho0;
        if (c.measure.center_x) jm["center_x"] = *c.measure.center_x;
        if (c.measure.center_t) jm["center_t"] = *c.measure.center_t;
        j["measure"] = jm;
    }
    if (c.command == Command::Barenblatt) {
        json jb{{"t_values", c.barenblatt.t_values}, {"x_count", c.barenblatt.x_count}};
        if (c.barenblatt.x_max) jb["x_max"] = *c.barenblatt.x_max;
        j["barenblatt"] = jb;
    }
    if (c.flux) j["flux"] = *c.flux;
    return j;
}

inline ExperimentConfig config_from_json(const json& j) {
    try {
        ExperimentConfig c;
        c.command = command_from_string(j.at("command").get<std::string>());
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("params")) c.params = params_from_json(j.at("params"));
        if (j.contains("alpha_hom")) {
            c.alpha_hom = j.at("alpha_hom").get<double>();
            if (!(*c.alpha_hom > 0.0 && *c.alpha_hom <= 1.0))
                throw ConfigError("alpha_hom must be in (0, 1]");
        }
        if (j.contains("sweep")) {
            const auto& js = j.at("sweep");
            auto& s = c.sweep;
            if (js.contains("m_min")) s.m_min = js.at("m_min").get<double>();
            if (js.contains("m_max")) s.m_max = js.at("m_max").get<double>();
            if (js.contains("m_step")) s.m_step = js.at("m_step").get<double>();
            if (js.contains("p_min")) s.p_min = js.at("p_min").get<double>();
            if (js.contains("p_max")) s.p_max = js.at("p_max").get<double>();
            if (js.contains("p_step")) s.p_step = js.at("p_step").get<double>();
            if (js.contains("n")) s.n = js.at("n").get<int>();
            if (js.contains("q")) s.q = exponent_from_json(js.at("q"));
            if (js.contains("r")) s.r = exponent_from_json(js.at("r"));
            if (!(s.m_step > 0.0 && s.p_step > 0.0))
                throw ConfigError("sweep: steps must be positive");
        }
        if (j.contains("solver")) {
            const auto& js = j.at("solver");
            auto& s = c.solve;
            if (js.contains("x_min")) s.x_min = js.at("x_min").get<double>();
            if (js.contains("x_max")) s.x_max = js.at("x_max").get<double>();
            if (js.contains("n_cells")) s.n_cells = js.at("n_cells").get<int>();
            if (js.contains("t_end")) s.t_end = js.at("t_end").get<double>();
            if (js.contains("cfl")) s.cfl = js.at("cfl").get<double>();
            if (js.contains("eps_u")) s.eps_u = js.at("eps_u").get<double>();
            if (js.contains("eps_g")) s.eps_g = js.at("eps_g").get<double>();
            if (js.contains("dt_max")) s.dt_max = js.at("dt_max").get<double>();
            if (js.contains("n_snapshots")) s.n_snapshots = js.at("n_snapshots").get<int>();
            if (js.contains("format")) s.format = js.at("format").get<std::string>();
            if (s.format != "csv" && s.format != "binary")
                throw ConfigError("solver.format must be csv or binary");
            if (js.contains("bc")) {
                const auto& jb = js.at("bc");
                s.bc.type = jb.at("type").get<std::string>();
                if (s.bc.type != "zero_flux" && s.bc.type != "dirichlet")
                    throw ConfigError("solver.bc.type must be zero_flux or dirichlet");
                if (jb.contains("left")) s.bc.left = jb.at("left").get<double>();
                if (jb.contains("right")) s.bc.right = jb.at("right").get<double>();
            }
            if (js.contains("initial")) {
                const auto& ji = js.at("initial");
                s.initial.type = ji.at("type").get<std::string>();
                if (ji.contains("value")) s.initial.value = ji.at("value").get<double>();
                if (ji.contains("amplitude")) s.initial.amplitude = ji.at("amplitude").get<double>();
                if (ji.contains("center")) s.initial.center = ji.at("center").get<double>();
                if (ji.contains("width")) s.initial.width = ji.at("width").get<double>();
                if (ji.contains("values"))
                    s.initial.values = ji.at("values").get<std::vector<double>>();
            }
            if (js.contains("source")) {
                const auto& jf = js.at("source");
                s.source.type = jf.at("type").get<std::string>();
                if (jf.contains("name")) s.source.name = jf.at("name").get<std::string>();
                if (jf.contains("times"))
                    s.source.times = jf.at("times").get<std::vector<double>>();
                if (jf.contains("rows"))
                    s.source.rows = jf.at("rows").get<std::vector<std::vector<double>>>();
            }
        }
        if (j.contains("measure")) {
            const auto& jm = j.at("measure");
            auto& m = c.measure;
            m.input = jm.at("input").get<std::string>();
            if (jm.contains("m")) m.m = jm.at("m").get<double>();
            if (jm.contains("p")) m.p = jm.at("p").get<double>();
            if (jm.contains("lambda")) m.lambda = jm.at("lambda").get<double>();
            if (jm.contains("rho0")) m.rho0 = jm.at("rho0").get<double>();
            if (jm.contains("center_x")) m.center_x = jm.at("center_x").get<double>();
            if (jm.contains("center_t")) m.center_t = jm.at("center_t").get<double>();
        }
        if (j.contains("barenblatt")) {
            const auto& jb = j.at("barenblatt");
            auto& b = c.barenblatt;
            if (jb.contains("t_values"))
                b.t_values = jb.at("t_values").get<std::vector<double>>();
            if (jb.contains("x_count")) b.x_count = jb.at("x_count").get<int>();
            if (jb.contains("x_max")) b.x_max = jb.at("x_max").get<double>();
        }
        if (j.contains("flux")) {
            c.flux = j.at("flux");
            flux_from_json(*c.flux);  // fail fast on malformed flux configs
        }
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline ExperimentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return config_from_json(j);
}

// ---------------------------------------------------------------- named pieces

/// Named manufactured profiles selectable as `mms:<name>`.
inline std::function<double(double, double)> mms_profile(const std::string& name) {
    if (name == "exp_sine")
        return [](double x, double t) { return std::exp(-t) * (2.0 + std::sin(x)); };
    if (name == "exp_cosine")
        return [](double x, double t) { return std::exp(-t) * (2.0 + std::cos(x)); };
    throw ConfigError("unknown mms profile: " + name);
}

inline std::vector<double> build_initial(const InitialSpec& spec, const Grid1D& grid) {
    std::vector<double> u0(static_cast<std::size_t>(grid.n_cells), 0.0);
    if (spec.type == "zero") return u0;
    if (spec.type == "constant") {
        std::fill(u0.begin(), u0.end(), spec.value);
        return u0;
    }
    if (spec.type == "sin_pi") {
        for (int i = 0; i < grid.n_cells; ++i) {
            const double s = (grid.center(i) - grid.x_min) / (grid.x_max - grid.x_min);
            u0[static_cast<std::size_t>(i)] = std::sin(M_PI * s);
        }
        return u0;
    }
    if (spec.type == "gaussian") {
        for (int i = 0; i < grid.n_cells; ++i) {
            const double d = grid.center(i) - spec.center;
            u0[static_cast<std::size_t>(i)] =
                spec.amplitude * std::exp(-d * d / (2.0 * spec.width * spec.width));
        }
        return u0;
    }
    if (spec.type == "table") {
        if (static_cast<int>(spec.values.size()) != grid.n_cells)
            throw ConfigError("initial.values length must equal n_cells");
        return spec.values;
    }
    throw ConfigError("unknown initial type: " + spec.type);
}

struct RunResult {
    int exit_code = 0;
    std::vector<std::string> artifacts;
};

namespace detail {

template <typename F>
void parallel_for(std::size_t count, F&& body) {
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw <= 1 || count < 64) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned n_threads = std::min<unsigned>(hw, 8);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += n_threads) body(i);
        });
    for (auto& th : pool) th.join();
}

inline int steps_of(double lo, double hi, double step) {
    return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace detail

// ---------------------------------------------------------------- commands

inline RunResult run_exponents(const ExperimentConfig& c, const std::string& out_dir) {
    if (!c.params) throw ConfigError("exponents: params required");
    const double ah = c.alpha_hom ? *c.alpha_hom
                                  : alpha_hom_default(c.params->m, c.params->p);
    const ExponentReport rep = alpha_sharp(*c.params, ah);
    const std::string path = out_dir + "/exponents.json";
    write_text_file(path, report_to_json(rep).dump(2) + "\n");
    std::cout << "[exponents] alpha=" << fmt(rep.alpha) << " theta=" << fmt(rep.theta)
              << " -> " << path << "\n";
    return {0, {path}};
}

inline RunResult run_sweep(const ExperimentConfig& c, const std::string& out_dir) {
    const SweepSpec& s = c.sweep;
    const int nm = detail::steps_of(s.m_min, s.m_max, s.m_step);
    const int np = detail::steps_of(s.p_min, s.p_max, s.p_step);
    if (nm < 1 || np < 1) throw ConfigError("sweep: empty grid");
    const std::size_t total = static_cast<std::size_t>(nm) * static_cast<std::size_t>(np);
    std::vector<std::string> rows(total);
    detail::parallel_for(total, [&](std::size_t idx) {
        const int im = static_cast<int>(idx) / np;
        const int ip = static_cast<int>(idx) % np;
        const double m = std::fmin(s.m_min + im * s.m_step, s.m_max);
        const double p = std::fmin(s.p_min + ip * s.p_step, s.p_max);
        const ProblemParams pp(m, p, s.n, s.q, s.r);
        const double ah = c.alpha_hom ? *c.alpha_hom : alpha_hom_default(m, p);
        std::string row;
        try {
            const ExponentReport rep = alpha_sharp(pp, ah);
            bool member = false;
            if (m > 1.0) member = improved_region_member(m, p, ah).member;
            row = fmt(m) + "," + fmt(p) + "," + fmt(rep.alpha) + "," + fmt(rep.theta) +
                  "," + fmt(rep.m_sharp) + "," + fmt(ah) + "," +
                  to_string(rep.governing) + "," + (rep.alpha_is_open_sup ? "true" : "false") +
                  "," + (member ? "true" : "false");
        } catch (const NonPositiveExponent&) {
            row = fmt(m) + "," + fmt(p) + ",nan,nan,nan," + fmt(ah) + ",none,false,false";
        }
        rows[idx] = row;
    });
    std::string csv = "m,p,alpha,theta,m_sharp,alpha_hom,governing,open_sup,improved_member\n";
    for (const auto& r : rows) csv += r + "\n";
    const std::string path = out_dir + "/sweep.csv";
    write_text_file(path, csv);
    std::cout << "[sweep] " << total << " grid points -> " << path << "\n";
    return {0, {path}};
}

inline RunResult run_solve(const ExperimentConfig& c, const std::string& out_dir) {
    if (!c.params) throw ConfigError("solve: params required");
    const SolveSpec& s = c.solve;
    const Grid1D grid(s.x_min, s.x_max, s.n_cells);
    SolverConfig cfg;
    cfg.eps_u = s.eps_u;
    cfg.eps_g = s.eps_g;
    cfg.cfl = s.cfl;
    cfg.dt_max = s.dt_max;
    cfg.t_end = s.t_end;
    cfg.n_snapshots = s.n_snapshots;

    std::vector<double> u0;
    SourceTerm src = SourceTerm::zero();
    if (s.source.type == "zero") {
        u0 = build_initial(s.initial, grid);
        cfg.bc = s.bc.type == "dirichlet"
                     ? BoundaryCondition::dirichlet(s.bc.left, s.bc.right)
                     : BoundaryCondition::zero_flux();
    } else if (s.source.type == "mms") {
        // Manufactured runs take u0 and Dirichlet data from the named profile.
        auto u_star = mms_profile(s.source.name);
        src = mms_source_table(u_star, c.params->m, c.params->p, grid, 0.0, s.t_end);
        u0.resize(static_cast<std::size_t>(grid.n_cells));
        for (int i = 0; i < grid.n_cells; ++i)
            u0[static_cast<std::size_t>(i)] = u_star(grid.center(i), 0.0);
        const double xl = grid.center(0);
        const double xr = grid.center(grid.n_cells - 1);
        cfg.bc = BoundaryCondition::dirichlet(
            [u_star, xl](double t) { return u_star(xl, t); },
            [u_star, xr](double t) { return u_star(xr, t); });
    } else if (s.source.type == "table") {
        u0 = build_initial(s.initial, grid);
        src = SourceTerm::table(s.source.times, s.source.rows);
        cfg.bc = s.bc.type == "dirichlet"
                     ? BoundaryCondition::dirichlet(s.bc.left, s.bc.right)
                     : BoundaryCondition::zero_flux();
    } else {
        throw ConfigError("unknown source type: " + s.source.type);
    }

    const SolveResult sol = solve(std::move(u0), grid, c.params->m, c.params->p, src, cfg);

    RunResult out;
    std::string field_path;
    if (s.format == "binary") {
        field_path = out_dir + "/field.bin";
        write_field_binary(field_path, sol.field);
    } else {
        field_path = out_dir + "/field.csv";
        write_field_csv(field_path, sol.field);
    }
    out.artifacts.push_back(field_path);

    json log{{"schema_version", kSchemaVersion},
             {"n_steps", sol.n_steps},
             {"max_abs", sol.max_abs},
             {"dt_min", sol.dt_min},
             {"dt_halvings", sol.dt_halvings},
             {"t_end", s.t_end},
             {"n_cells", s.n_cells}};
    const std::string log_path = out_dir + "/run_log.json";
    write_text_file(log_path, log.dump(2) + "\n");
    out.artifacts.push_back(log_path);
    std::cout << "[solve] " << sol.n_steps << " steps, max|u|=" << fmt(sol.max_abs)
              << " -> " << field_path << "\n";
    return out;
}

inline RunResult run_measure(const ExperimentConfig& c, const std::string& out_dir) {
    const MeasureSpec& m = c.measure;
    if (m.input.empty()) throw ConfigError("measure: input field path required");
    SpaceTimeField field = m.input.size() > 4 && m.input.substr(m.input.size() - 4) == ".bin"
                               ? read_field_binary(m.input)
                               : read_field_csv(m.input);
    const double x0 = m.center_x ? *m.center_x
                                 : (field.grid.x_min + field.grid.x_max) / 2.0;
    const double t0 = m.center_t ? *m.center_t : field.times.back();
    const double rho0 = m.rho0 ? *m.rho0 : (field.grid.x_max - field.grid.x_min) / 4.0;

    const ExponentFit fit = fit_alpha_theta(field, x0, t0, m.m, m.p, m.lambda, rho0);

    const std::string fit_path = out_dir + "/measure.json";
    write_text_file(fit_path, fit_to_json(fit, x0, t0).dump(2) + "\n");
    std::ostringstream series;
    write_series_csv(series, fit.series);
    const std::string series_path = out_dir + "/series.csv";
    write_text_file(series_path, series.str());
    std::cout << "[measure] alpha_emp=" << fmt(fit.alpha_emp)
              << " converged=" << (fit.converged ? "true" : "false") << " -> " << fit_path
              << "\n";
    return {fit.no_decay ? 1 : 0, {fit_path, series_path}};
}

inline RunResult run_validate(const ExperimentConfig& c, const std::string& out_dir) {
    if (!c.params) throw ConfigError("validate: params required");
    const double m = c.params->m;
    const double p = c.params->p;
    json report{{"schema_version", kSchemaVersion}};
    bool all_pass = true;

    StructureSampleSpec sspec;
    sspec.seed = c.seed == 0 ? sspec.seed : c.seed;
    const FluxField flux = c.flux ? flux_from_json(*c.flux) : prototype_flux(m, p, 2);
    const StructureReport srep = validate_structure(flux, sspec);
    report["structure"] = structure_to_json(srep);
    all_pass = all_pass && srep.pass;
    std::cout << "[validate] structure " << (srep.pass ? "pass" : "FAIL") << "\n";

    if (m + p > 3.0) {
        const BarenblattParams bp = barenblatt_params(m, p, c.params->n);
        const auto samples = barenblatt_samples(bp, 100, 0.5, 2.0, c.seed + 1);
        double worst = 0.0;
        for (double sigma : {0.5, 2.0, 10.0})
            worst = std::fmax(worst, self_similarity_check(bp, samples, sigma));
        const bool ss_pass = worst <= 1e-12;
        report["barenblatt"] = {{"lambda0", bp.lambda0},
                                {"b", bp.b},
                                {"self_similarity_max_err", worst},
                                {"pass", ss_pass}};
        all_pass = all_pass && ss_pass;
        std::cout << "[validate] barenblatt self-similarity "
                  << (ss_pass ? "pass" : "FAIL") << " (max err " << fmt(worst) << ")\n";
    } else {
        report["barenblatt"] = {{"skipped", "m + p <= 3"}};
        std::cout << "[validate] barenblatt skipped (m + p <= 3)\n";
    }

    ConvergenceCase heat;
    heat.u_exact = [](double x, double t) {
        return std::exp(-M_PI * M_PI * t) * std::sin(M_PI * x);
    };
    heat.x_min = 0.0;
    heat.x_max = 1.0;
    heat.t_end = 0.05;
    heat.m = 1.0;
    heat.p = 2.0;
    heat.cfg_template.dt_max = 1e-3;
    heat.cfg_template.cfl = 0.4;
    heat.cfg_template.n_snapshots = 9;
    const ConvergenceResult conv = convergence_study(heat, {64, 128, 256});
    const double order = conv.order_linf.back();
    const bool conv_pass = order >= 0.8 && !conv.degenerate;
    report["convergence"] = {{"n_cells", conv.n_cells},
                             {"err_linf", conv.err_linf},
                             {"order_linf", conv.order_linf},
                             {"order_l1", conv.order_l1},
                             {"pass", conv_pass}};
    all_pass = all_pass && conv_pass;
    std::cout << "[validate] heat convergence " << (conv_pass ? "pass" : "FAIL")
              << " (order " << fmt(order) << ")\n";

    report["pass"] = all_pass;
    const std::string path = out_dir + "/validate.json";
    write_text_file(path, report.dump(2) + "\n");
    return {all_pass ? 0 : 1, {path}};
}

inline RunResult run_barenblatt(const ExperimentConfig& c, const std::string& out_dir) {
    if (!c.params) throw ConfigError("barenblatt: params required");
    const BarenblattParams bp = barenblatt_params(c.params->m, c.params->p, c.params->n);
    const BarenblattSpec& b = c.barenblatt;
    if (b.t_values.empty() || b.x_count < 2)
        throw ConfigError("barenblatt: need t_values and x_count >= 2");
    double x_max = 0.0;
    if (b.x_max) {
        x_max = *b.x_max;
    } else {
        for (double t : b.t_values)
            if (t > 0.0) x_max = std::fmax(x_max, 1.05 * barenblatt_support_radius(bp, t));
        if (x_max == 0.0) x_max = 1.0;
    }
    std::string csv = "x,t,value\n";
    for (double t : b.t_values)
        for (double x : linspace(0.0, x_max, b.x_count))
            csv += fmt(x) + "," + fmt(t) + "," + fmt(barenblatt_evaluate(bp, x, t)) + "\n";
    const std::string path = out_dir + "/barenblatt.csv";
    write_text_file(path, csv);
    std::cout << "[barenblatt] lambda0=" << fmt(bp.lambda0) << " b=" << fmt(bp.b)
              << " -> " << path << "\n";
    return {0, {path}};
}

/// Batch entry point. Exit codes: 0 success, 1 validation/measurement failure,
/// 2 config error.
inline RunResult run_experiment(const ExperimentConfig& c) {
    std::error_code ec;
    std::filesystem::create_directories(c.output_dir, ec);
    if (ec) throw IoError("cannot create output dir: " + c.output_dir);
    switch (c.command) {
        case Command::Exponents: return run_exponents(c, c.output_dir);
        case Command::Sweep: return run_sweep(c, c.output_dir);
        case Command::Solve: return run_solve(c, c.output_dir);
        case Command::Measure: return run_measure(c, c.output_dir);
        case Command::Validate: return run_validate(c, c.output_dir);
        case Command::Barenblatt: return run_barenblatt(c, c.output_dir);
    }
    throw ConfigError("unhandled command");
}

}  // namespace ddparab
