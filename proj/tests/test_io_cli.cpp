#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "ddparab/experiment.hpp"
#include "ddparab/io.hpp"

using namespace ddparab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ddparab_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string str(const std::string& name = "") const {
        return name.empty() ? path.string() : (path / name).string();
    }
};

SpaceTimeField demo_field() {
    Grid1D grid(-0.5, 1.5, 32);
    return sample_field(grid, linspace(0.0, 0.25, 9), [](double x, double t) {
        return std::sin(3.0 * x) * std::exp(-t) + 0.1 * x;
    });
}

}  // namespace

TEST(FieldCsv, RoundTripIsExact) {
    const SpaceTimeField f = demo_field();
    TempDir dir;
    write_field_csv(dir.str("f.csv"), f);
    const SpaceTimeField g = read_field_csv(dir.str("f.csv"));
    ASSERT_EQ(g.n_rows(), f.n_rows());
    ASSERT_EQ(g.grid.n_cells, f.grid.n_cells);
    EXPECT_NEAR(g.grid.x_min, f.grid.x_min, 1e-14);
    for (std::size_t j = 0; j < f.n_rows(); ++j) {
        EXPECT_EQ(g.times[j], f.times[j]);  // shortest round-trip formatting
        for (int i = 0; i < f.grid.n_cells; ++i) EXPECT_EQ(g.at(j, i), f.at(j, i));
    }
}

TEST(FieldBinary, RoundTripIsExact) {
    const SpaceTimeField f = demo_field();
    TempDir dir;
    write_field_binary(dir.str("f.bin"), f);
    const SpaceTimeField g = read_field_binary(dir.str("f.bin"));
    EXPECT_EQ(g.values, f.values);
    EXPECT_EQ(g.times, f.times);
    EXPECT_EQ(g.grid.x_min, f.grid.x_min);
    EXPECT_EQ(g.grid.x_max, f.grid.x_max);
}

TEST(FieldBinary, RejectsCorruptHeader) {
    TempDir dir;
    write_text_file(dir.str("bad.bin"), "NOTMAGIC-and-then-some-bytes");
    EXPECT_THROW(read_field_binary(dir.str("bad.bin")), IoError);
}

TEST(ReportJson, StableShape) {
    const ExponentReport rep = alpha_sharp(ProblemParams(2, 3, 2, 3, 4), 1.0);
    const json j = report_to_json(rep);
    for (const char* key : {"m", "p", "n", "q", "r", "alpha", "theta", "m_sharp",
                            "alpha_hom", "governing_term", "open_sup", "flags",
                            "schema_version"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_NEAR(j["alpha"].get<double>(), 0.6, 1e-12);
    EXPECT_EQ(j["governing_term"], "HomogeneousTheory");
}

TEST(ReportJson, InfinityConvention) {
    const ProblemParams pp(2, 3, 2, kInf, kInf);
    const json j = params_to_json(pp);
    EXPECT_EQ(j["q"], "inf");
    const ProblemParams back = params_from_json(j);
    EXPECT_TRUE(std::isinf(back.q));
    EXPECT_TRUE(std::isinf(back.r));
}

TEST(Config, RoundTripUnchanged) {
    const char* text = R"({
      "command": "solve",
      "seed": 7,
      "output_dir": "out",
      "params": {"m": 2, "p": 3, "n": 1, "q": "inf", "r": "inf"},
      "solver": {
        "x_min": 0.0, "x_max": 3.0, "n_cells": 64, "t_end": 0.02,
        "bc": {"type": "dirichlet", "left": 2.0, "right": 2.0},
        "initial": {"type": "gaussian", "amplitude": 1.0, "center": 1.5, "width": 0.3},
        "source": {"type": "zero"}, "format": "binary"
      }
    })";
    const ExperimentConfig c1 = parse_config_text(text);
    const json j1 = config_to_json(c1);
    const ExperimentConfig c2 = config_from_json(j1);
    EXPECT_EQ(config_to_json(c2), j1);  // canonical form is a fixed point
}

TEST(Config, MalformedInputsThrowConfigError) {
    EXPECT_THROW(parse_config_text("{ not json"), ConfigError);
    EXPECT_THROW(parse_config_text(R"({"command":"dance"})"), ConfigError);
    EXPECT_THROW(parse_config_text(R"({"command":"exponents","alpha_hom":1.5})"),
                 ConfigError);
    EXPECT_THROW(parse_config_text(
                     R"({"command":"solve","params":{"m":2,"p":3,"n":1},
                        "solver":{"format":"xml"}})"),
                 ConfigError);
    // diagnostic names the offending field
    try {
        parse_config_text(R"({"command":"exponents","params":{"m":0.5,"p":3,"n":1}})");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("m must be"), std::string::npos);
    }
}

TEST(RunExperiment, ExponentsArtifact) {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::Exponents;
    c.params = ProblemParams(2, 3, 2, 3, 4);
    c.output_dir = dir.str();
    const RunResult res = run_experiment(c);
    EXPECT_EQ(res.exit_code, 0);
    const json j = json::parse(read_text_file(dir.str("exponents.json")));
    EXPECT_NEAR(j["alpha"].get<double>(), 0.6, 1e-12);
    EXPECT_NEAR(j["theta"].get<double>(), 1.8, 1e-12);
    EXPECT_TRUE(j["open_sup"].get<bool>());
}

TEST(RunExperiment, SweepContainsImprovedMembership) {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::Sweep;
    c.output_dir = dir.str();
    c.sweep = {1.0, 3.0, 0.5, 2.0, 3.0, 0.5, 2, 3.0, 4.0};
    const RunResult res = run_experiment(c);
    EXPECT_EQ(res.exit_code, 0);
    const std::string csv = read_text_file(dir.str("sweep.csv"));
    EXPECT_NE(csv.find("m,p,alpha,theta,m_sharp,alpha_hom,governing,open_sup,improved_member"),
              std::string::npos);
    // row (2.0, 2.0): member of the improved region
    const auto pos = csv.find("\n2,2,");
    ASSERT_NE(pos, std::string::npos);
    const auto line = csv.substr(pos + 1, csv.find('\n', pos + 1) - pos - 1);
    EXPECT_NE(line.rfind(",true"), std::string::npos);
}

TEST(RunExperiment, SolveMeasurePipeline) {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::Solve;
    c.params = ProblemParams(1, 2, 1);
    c.output_dir = dir.str();
    c.solve.x_min = 0.0;
    c.solve.x_max = 1.0;
    c.solve.n_cells = 128;
    c.solve.t_end = 0.02;
    c.solve.dt_max = 2e-4;
    c.solve.n_snapshots = 129;
    c.solve.bc = {"dirichlet", 0.0, 0.0};
    c.solve.initial.type = "sin_pi";
    c.solve.format = "binary";
    const RunResult res = run_experiment(c);
    EXPECT_EQ(res.exit_code, 0);

    // emitted field is re-parseable by the library's own reader
    const SpaceTimeField f = read_field_binary(dir.str("field.bin"));
    EXPECT_EQ(f.grid.n_cells, 128);
    EXPECT_EQ(f.times.size(), 129u);

    ExperimentConfig mc;
    mc.command = Command::Measure;
    mc.output_dir = dir.str();
    mc.measure.input = dir.str("field.bin");
    mc.measure.m = 1.0;
    mc.measure.p = 2.0;
    mc.measure.center_x = 0.25;
    mc.measure.rho0 = 0.4;
    const RunResult mres = run_experiment(mc);
    EXPECT_EQ(mres.exit_code, 0);
    const json fit = json::parse(read_text_file(dir.str("measure.json")));
    EXPECT_TRUE(fit["converged"].get<bool>());
    const std::string series = read_text_file(dir.str("series.csv"));
    EXPECT_NE(series.find("k,rho_k,osc_k"), std::string::npos);
}

TEST(FluxConfig, DeclarativeFluxes) {
    const FluxField proto =
        flux_from_json(json::parse(R"({"type":"prototype","m":2,"p":3,"dim":2})"));
    EXPECT_EQ(proto.dim, 2);
    EXPECT_DOUBLE_EQ(proto.c1, 1.0);

    const char* scaled_text = R"({
      "type": "scaled_prototype", "m": 2, "p": 3, "dim": 2,
      "coefficient": {"x": [-1, 0, 1], "t": [-1, 0],
                      "values": [[1.0, 1.5, 1.25], [1.1, 1.4, 1.2]]}
    })";
    const FluxField scaled = flux_from_json(json::parse(scaled_text));
    EXPECT_DOUBLE_EQ(scaled.c1, 1.0);
    EXPECT_DOUBLE_EQ(scaled.c2, 1.5);
    EXPECT_TRUE(validate_structure(scaled).pass);

    EXPECT_THROW(flux_from_json(json::parse(R"({"type":"mystery","m":2,"p":3})")),
                 ConfigError);
}

TEST(FluxConfig, ValidateUsesConfiguredFlux) {
    TempDir dir;
    ExperimentConfig c = parse_config_text(R"({
      "command": "validate",
      "params": {"m": 2, "p": 3, "n": 2},
      "flux": {"type": "scaled_prototype", "m": 2, "p": 3, "dim": 2,
               "coefficient": {"x": [-1, 1], "t": [-1, 0],
                               "values": [[0.5, 2.0], [0.6, 1.9]]}}
    })");
    c.output_dir = dir.str();
    EXPECT_EQ(run_experiment(c).exit_code, 0);
    const json v = json::parse(read_text_file(dir.str("validate.json")));
    EXPECT_TRUE(v["structure"]["pass"].get<bool>());
    EXPECT_LE(v["structure"]["min_ellipticity_ratio"].get<double>(), 2.0);
    // config with flux round-trips
    EXPECT_EQ(config_to_json(config_from_json(config_to_json(c))), config_to_json(c));
}

TEST(RunExperiment, ValidateAndBarenblatt) {
    TempDir dir;
    ExperimentConfig c;
    c.command = Command::Validate;
    c.params = ProblemParams(2, 3, 2);
    c.output_dir = dir.str();
    c.seed = 11;
    const RunResult res = run_experiment(c);
    EXPECT_EQ(res.exit_code, 0);
    const json v = json::parse(read_text_file(dir.str("validate.json")));
    EXPECT_TRUE(v["pass"].get<bool>());
    EXPECT_TRUE(v["structure"]["pass"].get<bool>());

    ExperimentConfig b;
    b.command = Command::Barenblatt;
    b.params = ProblemParams(2, 3, 2);
    b.output_dir = dir.str();
    const RunResult bres = run_experiment(b);
    EXPECT_EQ(bres.exit_code, 0);
    const std::string csv = read_text_file(dir.str("barenblatt.csv"));
    EXPECT_NE(csv.find("x,t,value"), std::string::npos);
}
