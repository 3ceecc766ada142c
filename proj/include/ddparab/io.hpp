#pragma once

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ddparab/common.hpp"
#include "ddparab/exponents.hpp"
#include "ddparab/field.hpp"
#include "ddparab/regularity.hpp"
#include "ddparab/structure.hpp"

namespace ddparab {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------- numbers

/// q/r infinities serialize as the string "inf"; readers accept either form.
inline json exponent_to_json(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

inline double exponent_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw ConfigError("expected a number or \"inf\"");
    }
    if (!j.is_number()) throw ConfigError("expected a number or \"inf\"");
    return j.get<double>();
}

// ---------------------------------------------------------------- field CSV

/// Header "t,x,u"; one line per (time, cell), grouped by time. Numbers use
/// shortest round-trip formatting, so read-back is bit exact.
inline void write_field_csv(std::ostream& os, const SpaceTimeField& f) {
    os << "t,x,u\n";
    for (std::size_t j = 0; j < f.n_rows(); ++j)
        for (int i = 0; i < f.grid.n_cells; ++i)
            os << fmt(f.times[j]) << ',' << fmt(f.grid.center(i)) << ',' << fmt(f.at(j, i))
               << '\n';
}

inline void write_field_csv(const std::string& path, const SpaceTimeField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_field_csv(os, f);
}

inline SpaceTimeField read_field_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,x,u", 0) != 0)
        throw IoError("field CSV: missing t,x,u header");
    std::vector<double> ts, xs, us;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double vals[3];
        for (int c = 0; c < 3; ++c) {
            if (!std::getline(ls, cell, ',')) throw IoError("field CSV: short row");
            vals[c] = std::strtod(cell.c_str(), nullptr);
        }
        ts.push_back(vals[0]);
        xs.push_back(vals[1]);
        us.push_back(vals[2]);
    }
    if (ts.empty()) throw IoError("field CSV: no data rows");
    std::size_t n_cells = 1;
    while (n_cells < ts.size() && ts[n_cells] == ts[0]) ++n_cells;
    if (ts.size() % n_cells != 0) throw IoError("field CSV: ragged time blocks");
    if (n_cells < 2) throw IoError("field CSV: need >= 2 cells");
    const double dx = xs[1] - xs[0];
    Grid1D grid(xs[0] - dx / 2.0, xs[n_cells - 1] + dx / 2.0, static_cast<int>(n_cells));
    SpaceTimeField f(grid);
    for (std::size_t j = 0; j * n_cells < ts.size(); ++j)
        f.push_row(ts[j * n_cells],
                   std::span<const double>(us.data() + j * n_cells, n_cells));
    f.validate();
    return f;
}

inline SpaceTimeField read_field_csv(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path);
    return read_field_csv(is);
}

// ---------------------------------------------------------------- field binary
//
// Compact column format for large runs. Layout (all little-endian):
//   bytes 0..7   magic "DDPBIN1\0"
//   u64          n_times
//   u64          n_cells
//   f64          x_min, x_max
//   f64[n_times] time stamps
//   f64[n_times*n_cells] values, row-major (time outer)

inline constexpr char kFieldMagic[8] = {'D', 'D', 'P', 'B', 'I', 'N', '1', '\0'};

inline void write_field_binary(const std::string& path, const SpaceTimeField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write(kFieldMagic, 8);
    const std::uint64_t nt = f.n_rows();
    const std::uint64_t nc = static_cast<std::uint64_t>(f.grid.n_cells);
    os.write(reinterpret_cast<const char*>(&nt), 8);
    os.write(reinterpret_cast<const char*>(&nc), 8);
    os.write(reinterpret_cast<const char*>(&f.grid.x_min), 8);
    os.write(reinterpret_cast<const char*>(&f.grid.x_max), 8);
    os.write(reinterpret_cast<const char*>(f.times.data()),
             static_cast<std::streamsize>(8 * nt));
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(8 * nt * nc));
    if (!os) throw IoError("write failed: " + path);
}

inline SpaceTimeField read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kFieldMagic, 8) != 0)
        throw IoError("field binary: bad magic");
    std::uint64_t nt = 0, nc = 0;
    double x_min = 0.0, x_max = 0.0;
    is.read(reinterpret_cast<char*>(&nt), 8);
    is.read(reinterpret_cast<char*>(&nc), 8);
    is.read(reinterpret_cast<char*>(&x_min), 8);
    is.read(reinterpret_cast<char*>(&x_max), 8);
    if (!is || nt == 0 || nc < 8 || nc > (1u << 24) || nt > (1u << 28))
        throw IoError("field binary: implausible header");
    Grid1D grid(x_min, x_max, static_cast<int>(nc));
    SpaceTimeField f(grid);
    f.times.resize(nt);
    f.values.resize(nt * nc);
    is.read(reinterpret_cast<char*>(f.times.data()), static_cast<std::streamsize>(8 * nt));
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(8 * nt * nc));
    if (!is) throw IoError("field binary: truncated payload");
    f.validate();
    return f;
}

// ---------------------------------------------------------------- JSON reports

inline json params_to_json(const ProblemParams& pp) {
    json j;
    j["m"] = pp.m;
    j["p"] = pp.p;
    j["n"] = pp.n;
    j["q"] = exponent_to_json(pp.q);
    j["r"] = exponent_to_json(pp.r);
    return j;
}

inline ProblemParams params_from_json(const json& j) {
    try {
        return ProblemParams(j.at("m").get<double>(), j.at("p").get<double>(),
                             j.at("n").get<int>(),
                             j.contains("q") ? exponent_from_json(j.at("q")) : kInf,
                             j.contains("r") ? exponent_from_json(j.at("r")) : kInf);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
}

inline json flags_to_json(const RegimeFlags& f) {
    return json{{"wcc", f.wcc},
                {"scc", f.scc},
                {"corollary_regime", f.corollary_regime},
                {"at_boundary", f.at_boundary}};
}

inline json report_to_json(const ExponentReport& rep) {
    json j = params_to_json(rep.params);
    j["schema_version"] = kSchemaVersion;
    j["alpha"] = rep.alpha;
    j["theta"] = rep.theta;
    j["m_sharp"] = rep.m_sharp;
    j["alpha_hom"] = rep.alpha_hom;
    j["source_exponent"] = rep.source_exponent;
    j["governing_term"] = to_string(rep.governing);
    j["open_sup"] = rep.alpha_is_open_sup;
    j["flags"] = flags_to_json(rep.flags);
    j["flags"]["wcc_warning"] = rep.wcc_warning;
    return j;
}

inline json fit_to_json(const ExponentFit& fit, double x0, double t0) {
    json series;
    series["k"] = fit.series.k;
    series["rho"] = fit.series.rho;
    series["osc"] = fit.series.osc;
    return json{{"schema_version", kSchemaVersion},
                {"center", {{"x", x0}, {"t", t0}}},
                {"lambda", fit.series.lambda},
                {"rho0", fit.series.rho0},
                {"series", series},
                {"alpha_emp", fit.alpha_emp},
                {"theta", fit.theta_used},
                {"r_squared", fit.r_squared},
                {"iterations", fit.iterations},
                {"converged", fit.converged},
                {"flags", {{"no_decay", fit.no_decay}, {"truncated", fit.series.truncated}}},
                {"n_levels", fit.n_levels}};
}

inline void write_series_csv(std::ostream& os, const OscillationSeries& s) {
    os << "k,rho_k,osc_k\n";
    for (std::size_t i = 0; i < s.k.size(); ++i)
        os << s.k[i] << ',' << fmt(s.rho[i]) << ',' << fmt(s.osc[i]) << '\n';
}

/// Declarative flux config:
///   {"type": "prototype", "m": .., "p": .., "dim": ..}
///   {"type": "scaled_prototype", "m": .., "p": .., "dim": ..,
///    "coefficient": {"x": [...], "t": [...], "values": [[row per t]...]}}
inline FluxField flux_from_json(const json& j) {
    try {
        const std::string type = j.at("type").get<std::string>();
        const double m = j.at("m").get<double>();
        const double p = j.at("p").get<double>();
        const int dim = j.contains("dim") ? j.at("dim").get<int>() : 2;
        if (type == "prototype") return prototype_flux(m, p, dim);
        if (type == "scaled_prototype") {
            GriddedCoefficient coeff;
            const auto& jc = j.at("coefficient");
            coeff.xs = jc.at("x").get<std::vector<double>>();
            coeff.ts = jc.at("t").get<std::vector<double>>();
            coeff.values = jc.at("values").get<std::vector<std::vector<double>>>();
            return gridded_prototype_flux(m, p, dim, std::move(coeff));
        }
        throw ConfigError("flux: unknown type " + type);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("flux: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("flux: ") + e.what());
    }
}

inline json structure_to_json(const StructureReport& rep) {
    json v = json::array();
    for (const auto& viol : rep.violations)
        v.push_back({{"x", viol.x},
                     {"t", viol.t},
                     {"s", viol.s},
                     {"xi_radius", viol.xi_radius},
                     {"ratio", viol.ratio},
                     {"what", viol.what}});
    return json{{"schema_version", kSchemaVersion},
                {"pass", rep.pass},
                {"min_ellipticity_ratio", rep.min_ellipticity_ratio},
                {"max_growth_ratio", rep.max_growth_ratio},
                {"n_samples", rep.n_samples},
                {"violations", v}};
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << content;
    if (!os) throw IoError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace ddparab
