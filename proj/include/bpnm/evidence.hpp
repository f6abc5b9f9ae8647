// Model evidence by thermodynamic integration over the sampler's bandwidth
// schedule, and Bayes factors between priors conditioned on the same
// information.
#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "bpnm/disintegration.hpp"

namespace bpnm {

struct EvidenceEstimate {
    // Normalized log evidence log p_A(a); see estimate_log_evidence.
    double log_evidence = 0.0;
    // log of the relaxed-model normalizing constant at the final bandwidth;
    // equals minus the sum of the rung contributions.
    double log_relaxed = 0.0;
    Eigen::VectorXd rung_contributions;   // nonnegative
    Eigen::VectorXd rung_standard_errors; // of the contributions
    double combined_se = 0.0;
    int n_observations = 0;
    std::uint64_t fingerprint = 0;
};

// Discretized thermodynamic identity in the phi(r) = exp(-r^2) convention:
// -sum_i (1/delta_i^2 - 1/delta_{i-1}^2) * E_i[r^2] with 1/delta_0^2 = 0.
double thermodynamic_sum(const std::vector<double>& deltas,
                         const Eigen::VectorXd& mean_r2);

// Consumes the per-temperature reductions of an SMC run (squared-exponential
// relaxation). Each rung contributes
//   (1/2) (1/delta_i^2 - 1/delta_{i-1}^2) * E_i[r^2]  >= 0,
// the factor 1/2 translating between the exp(-r^2) convention of the
// identity above and the exp(-r^2/2) relaxation the samplers use. The sum
// estimates the relaxed normalizer log Z at delta_m; the reported
// log_evidence removes the Gaussian window volume,
//   log p_A(a) = log Z - (n/2) log(2 pi delta_m^2),
// so estimates at different final bandwidths are directly comparable and
// match the closed-form linear-Gaussian evidence.
EvidenceEstimate estimate_log_evidence(const SmcHistory& history);

// exp(e1.log_evidence - e2.log_evidence); refuses estimates computed
// against different information.
double bayes_factor(const EvidenceEstimate& e1, const EvidenceEstimate& e2);

// Builds evidence-ready per-rung reductions from a parallel-tempering run:
// chain i's post-burn-in squared-residual trace estimates E_i[r^2], with a
// batch-means standard error.
SmcHistory pt_history(const PtResult& result,
                      const TemperatureSchedule& schedule,
                      const InformationOperator& A, int burn_in,
                      int batches = 20);

}  // namespace bpnm
