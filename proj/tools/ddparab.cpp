// Batch front door: parse an experiment config, run the requested pipeline,
// emit CSV/JSON artifacts. Exit 0 on success, 1 on validation failure, 2 on
// config errors.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ddparab/experiment.hpp"
#include "ddparab/io.hpp"

namespace {

int run_verb(ddparab::Command verb, const std::string& config_path,
             const std::optional<std::string>& out_dir,
             const std::optional<std::uint64_t>& seed) {
    try {
        ddparab::ExperimentConfig cfg =
            ddparab::parse_config_text(ddparab::read_text_file(config_path));
        cfg.command = verb;  // the verb wins over the config's command field
        if (out_dir) cfg.output_dir = *out_dir;
        if (seed) cfg.seed = *seed;
        return ddparab::run_experiment(cfg).exit_code;
    } catch (const ddparab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ddparab::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"doubly degenerate parabolic regularity toolkit"};
    app.require_subcommand(1);

    struct VerbArgs {
        std::string config;
        std::optional<std::string> out;
        std::optional<std::uint64_t> seed;
    };

    std::vector<std::pair<ddparab::Command, std::shared_ptr<VerbArgs>>> verbs;
    for (auto cmd : {ddparab::Command::Exponents, ddparab::Command::Sweep,
                     ddparab::Command::Solve, ddparab::Command::Measure,
                     ddparab::Command::Validate, ddparab::Command::Barenblatt}) {
        auto args = std::make_shared<VerbArgs>();
        CLI::App* sub = app.add_subcommand(ddparab::to_string(cmd));
        sub->add_option("--config", args->config, "experiment config (JSON)")->required();
        sub->add_option("--out", args->out, "output directory (overrides config)");
        sub->add_option("--seed", args->seed, "sampling seed (overrides config)");
        verbs.emplace_back(cmd, args);
    }

    CLI11_PARSE(app, argc, argv);

    for (const auto& [cmd, args] : verbs)
        if (app.get_subcommand(ddparab::to_string(cmd))->parsed())
            return run_verb(cmd, args->config, args->out, args->seed);
    return 2;
}
