// Experiment runners behind the command-line interface. Each consumes a
// validated configuration, executes the study at the configured scale and
// writes the three run artifacts (samples CSV, grid CSV, summary JSON) into
// the output directory; the returned document is the summary that was
// written. Failures surface as the typed errors the CLI maps to exit codes:
// SamplerError for dead ensembles, ConditioningError for failed
// factorizations, ConfigError for semantic problems found at run time.
#pragma once

#include <string>

#include "json.hpp"

#include "bpnm/config.hpp"

namespace bpnm {

nlohmann::json run_quadrature(const ExperimentConfig& config,
                              const std::string& output_dir, int workers);
nlohmann::json run_poisson(const ExperimentConfig& config,
                           const std::string& output_dir, int workers);
nlohmann::json run_painleve(const ExperimentConfig& config,
                            const std::string& output_dir, int workers);
nlohmann::json run_pipeline_demo(const ExperimentConfig& config,
                                 const std::string& output_dir, int workers);
nlohmann::json run_risk(const ExperimentConfig& config,
                        const std::string& output_dir, int workers);
nlohmann::json run_counterexample(const ExperimentConfig& config,
                                  const std::string& output_dir, int workers);

// Dispatches on config.experiment.
nlohmann::json run_experiment(const ExperimentConfig& config,
                              const std::string& output_dir, int workers);

}  // namespace bpnm
