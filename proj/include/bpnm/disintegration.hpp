// Numerical disintegration samplers: sequential Monte Carlo over a
// decreasing bandwidth schedule (with the survivor-set variant for the
// indicator relaxation) and parallel tempering with one adjacent swap per
// iteration. Both use the preconditioned Langevin kernel and counter-based
// random streams, so results are byte-identical for a fixed seed regardless
// of the worker count.
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "bpnm/info_operator.hpp"
#include "bpnm/mala.hpp"
#include "bpnm/series_prior.hpp"

namespace bpnm {

struct TemperatureSchedule {
    // delta_1 > delta_2 > ... > delta_m > 0; delta_0 = infinity is implicit.
    std::vector<double> deltas;

    static TemperatureSchedule log_uniform(double delta_first,
                                           double delta_last, int m);
    static TemperatureSchedule from_deltas(std::vector<double> deltas);

    int size() const { return static_cast<int>(deltas.size()); }
    double delta(int rung) const;
    void validate() const;
};

struct ParticleEnsemble {
    Eigen::MatrixXd states;   // one particle per row
    Eigen::VectorXd weights;  // normalized; uniform after a re-sample
    int temperature_index = -1;
    double ess = 0.0;
    double acceptance_rate = 0.0;
    bool failed = false;

    int particles() const { return static_cast<int>(states.rows()); }
};

// Per-rung reductions kept instead of full ensembles: enough for the
// evidence estimator and for diagnostics, bounded memory for long schedules.
struct RungStats {
    double delta = 0.0;
    double ess = 0.0;
    double acceptance_rate = 0.0;
    // Weighted ensemble average of |A(x)-a|^2 at this temperature and its
    // Monte Carlo standard error.
    double mean_r2 = 0.0;
    double se_r2 = 0.0;
};

struct SmcHistory {
    std::vector<RungStats> rungs;
    bool failed = false;
    int failure_rung = -1;
    int n_observations = 0;
    std::uint64_t fingerprint = 0;
};

struct SmcResult {
    ParticleEnsemble ensemble;
    SmcHistory history;
};

// Algorithm: initialize P particles from the prior (rejection-sampled to
// satisfy any inequality constraints); per temperature Move every particle
// with the Langevin kernel targeting delta_i, Re-weight with
// phi(r/delta_i)/phi(r/delta_{i-1}) at the moved states, then Re-sample
// multinomially. The indicator relaxation replaces Re-weight/Re-sample with
// the survivor set {r < delta_i}: a particle outside it is redrawn uniformly
// from the set, and an empty set aborts with the failure flag. A failure
// (also: all squared-exponential weights underflowing to zero) returns the
// partial history with the failing rung recorded.
SmcResult smc_nd(const SeriesPrior& prior, const InformationOperator& A,
                 const RelaxationKernel& phi,
                 const TemperatureSchedule& schedule, int particles,
                 const MalaConfig& cfg, std::uint64_t seed,
                 const std::vector<InequalityConstraint>& constraints = {},
                 int workers = 1);

struct PtResult {
    // Cold chain (smallest bandwidth) state after every iteration.
    Eigen::MatrixXd cold_trace;
    // Squared residual norm per iteration (rows) and chain (columns).
    Eigen::MatrixXd r2_trace;
    Eigen::VectorXd acceptance;     // Langevin acceptance rate per chain
    Eigen::VectorXd swap_attempts;  // per adjacency (size m-1)
    Eigen::VectorXd swap_accepts;
};

// Parallel tempering: one chain per schedule bandwidth, initialized from the
// prior. Each iteration moves every chain with the Langevin kernel, then
// proposes one swap of an adjacency drawn uniformly from the m-1 candidates;
// the swap of the moved states x^q, x^{q+1} is accepted with probability
// min(1, [pi_q(x^{q+1}) pi_{q+1}(x^q)] / [pi_q(x^q) pi_{q+1}(x^{q+1})]).
PtResult pt_nd(const SeriesPrior& prior, const InformationOperator& A,
               const RelaxationKernel& phi,
               const TemperatureSchedule& schedule, int iterations,
               const MalaConfig& cfg, std::uint64_t seed,
               const std::vector<InequalityConstraint>& constraints = {},
               int workers = 1);

// Stable digest of an information operator (functional kinds, locations,
// parameters, observed values, threshold), used to refuse Bayes-factor
// comparisons across different information.
std::uint64_t information_fingerprint(const InformationOperator& A);

}  // namespace bpnm
