#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ntcorr/config.hpp"
#include "ntcorr/runner.hpp"

namespace {

std::string resolve_config_path(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return arg;
    fs::path preset = fs::path(NTCORR_PRESET_DIR) / (arg + ".cfg");
    if (fs::exists(preset)) return preset.string();
    throw std::runtime_error("no such config file or preset: " + arg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"n-time correlator experiments"};
    app.require_subcommand(1);

    std::string config_arg;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> oracle_max;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a preset name or config file");
    run->add_option("config", config_arg, "preset name or path to a config file")->required();
    run->add_option("--seed", seed, "override the master seed");
    run->add_option("--out", out_dir, "override the output directory");
    run->add_option("--oracle-max-qubits", oracle_max, "cap for dense reference computations");

    CLI::App* selftest = app.add_subcommand("selftest", "run the bracket selftest and print the report");
    selftest->add_option("--seed", seed, "override the master seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed()) {
            ntcorr::ExperimentConfig cfg;
            cfg.experiment = ntcorr::ExperimentKind::bracket_selftest;
            if (seed) cfg.seed = *seed;
            ntcorr::SelftestOutput out = ntcorr::run_bracket_selftest(cfg);
            std::cout << out.report;
            return out.pass ? 0 : 2;
        }

        ntcorr::ExperimentConfig cfg = ntcorr::parse_config_file(resolve_config_path(config_arg));
        if (seed) cfg.seed = *seed;
        if (out_dir) cfg.output_dir = *out_dir;
        if (oracle_max) cfg.oracle_max_qubits = *oracle_max;
        int code = ntcorr::run_experiment(cfg);
        std::cout << "artifacts written to " << cfg.output_dir << "\n";
        if (code != 0) std::cerr << "numerical gate failed (exit 2)\n";
        return code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
