// Versioned JSON experiment configuration shared by the command-line runner
// and its validate subcommand. Parsing reports malformed documents with line
// positions; validation reports every violated field constraint by name.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bpnm {

enum class ExperimentKind {
    Quadrature,
    Poisson,
    Painleve,
    PipelineDemo,
    Risk,
    Counterexample,
};

std::string experiment_name(ExperimentKind kind);

struct ScaleConfig {
    std::string kind = "power";  // power | geometric
    double alpha = 1.0;
    double exponent = 2.0;  // decay p for power, ratio beta for geometric
};

struct PriorConfig {
    std::string family = "gaussian";  // gaussian | cauchy | uniform
    ScaleConfig scale;
    double x0 = 0.0;
    int degree = 8;  // line max degree, or triangle total degree for poisson
};

struct InformationConfig {
    int n = 5;                       // number of observations
    std::string layout = "midpoints";  // midpoints | equispaced (interior)
    std::vector<double> observed;    // quadrature data, one value per site
    bool negative_initial_slope = false;  // painleve x'(0) <= 0 constraint
    std::string kernel = "wiener";   // pipeline-demo: wiener | integrated-wiener
};

struct ScheduleConfig {
    double first = 3.0;
    double last = 1e-3;
    int count = 40;
};

struct SamplerConfig {
    std::string algorithm = "smc";  // smc | pt
    ScheduleConfig schedule;
    int particles = 2000;   // smc ensemble size; risk reuses it as MC draws
    int iterations = 20000;  // pt chain length
    int burn_in = 5000;      // pt iterations discarded before averaging
    double tau0 = 1.0;
    double step_cap = 0.0;  // upper bound on per-rung step sizes; 0 disables
    int steps = 8;          // Langevin steps per kernel application
    std::string relaxation = "squared-exponential";  // or indicator
    std::uint64_t seed = 1;
};

struct OutputConfig {
    std::string samples = "samples.csv";
    std::string grid = "grid.csv";
    std::string summary = "summary.json";
};

struct ExperimentConfig {
    int schema_version = 1;
    ExperimentKind experiment = ExperimentKind::Quadrature;
    PriorConfig prior;
    InformationConfig information;
    SamplerConfig sampler;
    OutputConfig output;
};

// Parses the JSON document at path. Throws ConfigError for unreadable files,
// malformed JSON (message carries line and column), unknown fields, wrong
// types, or an unsupported schema_version. Field constraints beyond types
// are left to validate_config.
ExperimentConfig load_config(const std::string& path);

// Schema and cross-field checks; one message per violation, each naming the
// offending field. An empty report means the configuration is runnable.
std::vector<std::string> validate_config(const ExperimentConfig& config);

// The configuration re-serialized as a pretty-printed JSON document; parsing
// it with load_config reproduces the struct.
std::string config_to_json_string(const ExperimentConfig& config);

}  // namespace bpnm
