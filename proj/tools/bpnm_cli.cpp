// Command-line experiment driver. `bpnm run --config <file>` executes one
// configured experiment and writes the samples CSV, grid CSV and summary
// JSON into the output directory; `bpnm validate --config <file>` performs
// the schema and cross-field checks without executing anything.
//
// Exit codes: 0 success, 2 configuration error, 3 sampler failure,
// 4 numerical (conditioning) error, 1 anything else.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bpnm/config.hpp"
#include "bpnm/errors.hpp"
#include "bpnm/experiments.hpp"

namespace {

// Paper-scale runs live next to the desk-scale defaults in a `paper`
// subdirectory with the same file name.
std::string paper_variant(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path p(path);
    fs::path candidate = p.parent_path() / "paper" / p.filename();
    if (!fs::exists(candidate))
        throw bpnm::ConfigError("no paper-scale config at " +
                                candidate.string());
    return candidate.string();
}

void print_headline(const nlohmann::json& summary) {
    std::cout << "experiment: " << summary["experiment"].get<std::string>()
              << "\n";
    if (summary.contains("evidence"))
        std::cout << "log evidence: "
                  << summary["evidence"]["log_evidence"].get<double>()
                  << " (se "
                  << summary["evidence"]["standard_error"].get<double>()
                  << ")\n";
    if (summary.contains("risk_ratio"))
        std::cout << "risk ratio: " << summary["risk_ratio"].get<double>()
                  << "\n";
    if (summary.contains("risks")) {
        for (const auto& row : summary["risks"])
            std::cout << row["method"].get<std::string>() << "  "
                      << row["information"].get<std::string>() << "  "
                      << row["risk"].get<std::string>() << "\n";
    }
    std::cout << "wall time: " << summary["wall_time_seconds"].get<double>()
              << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian probabilistic numerical methods experiment driver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = ".";
    std::uint64_t seed = 0;
    int workers = 1;
    bool paper_scale = false;

    CLI::App* run = app.add_subcommand(
        "run", "Execute the experiment described by a JSON config");
    run->add_option("--config", config_path, "Path to the experiment config")
        ->required();
    CLI::Option* seed_opt = run->add_option(
        "--seed", seed, "Override the seed in the config");
    run->add_option("--output-dir", output_dir,
                    "Directory for the output files (created if missing)");
    run->add_option("--workers", workers,
                    "Worker threads; does not affect results")
        ->check(CLI::PositiveNumber);
    run->add_flag("--paper-scale", paper_scale,
                  "Use the paper-scale config from the sibling paper/ "
                  "directory");

    CLI::App* validate = app.add_subcommand(
        "validate", "Check a config without executing it");
    validate->add_option("--config", config_path,
                         "Path to the experiment config")
        ->required();
    validate->add_flag("--paper-scale", paper_scale,
                       "Validate the paper-scale variant instead");

    CLI11_PARSE(app, argc, argv);

    try {
        std::string path =
            paper_scale ? paper_variant(config_path) : config_path;
        bpnm::ExperimentConfig config = bpnm::load_config(path);
        std::vector<std::string> problems = bpnm::validate_config(config);

        if (validate->parsed()) {
            if (problems.empty()) {
                std::cout << "ok: " << path << "\n";
                return 0;
            }
            for (const std::string& p : problems)
                std::cerr << "config error: " << p << "\n";
            return 2;
        }

        if (!problems.empty()) {
            for (const std::string& p : problems)
                std::cerr << "config error: " << p << "\n";
            return 2;
        }
        if (seed_opt->count() > 0) config.sampler.seed = seed;

        nlohmann::json summary =
            bpnm::run_experiment(config, output_dir, workers);
        print_headline(summary);
        std::cout << "wrote " << output_dir << "/" << config.output.samples
                  << ", " << output_dir << "/" << config.output.grid << ", "
                  << output_dir << "/" << config.output.summary << "\n";
        return 0;
    } catch (const bpnm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bpnm::SamplerError& e) {
        std::cerr << "sampler failure at rung " << e.rung << ": " << e.what()
                  << "\n";
        return 3;
    } catch (const bpnm::EvidenceError& e) {
        std::cerr << "sampler failure at rung " << e.rung << ": " << e.what()
                  << "\n";
        return 3;
    } catch (const bpnm::ConditioningError& e) {
        std::cerr << "numerical error (rcond " << e.rcond << "): " << e.what()
                  << "\n";
        return 4;
    } catch (const bpnm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
