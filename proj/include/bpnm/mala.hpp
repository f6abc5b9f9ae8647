// Relaxed posterior targets and the preconditioned Metropolis-adjusted
// Langevin kernel used by both samplers, plus the moment-ratio constant of
// the relaxation kernel.
#pragma once

#include <vector>

#include <Eigen/Core>

#include "bpnm/info_operator.hpp"
#include "bpnm/rng.hpp"
#include "bpnm/series_prior.hpp"

namespace bpnm {

struct RelaxationKernel {
    enum class Kind { SquaredExponential, Indicator };

    static RelaxationKernel squared_exponential();
    static RelaxationKernel indicator();

    // log phi(r); -infinity where the indicator vanishes (r >= 1).
    double log_phi(double r) const;
    bool positive() const { return kind == Kind::SquaredExponential; }

    Kind kind = Kind::SquaredExponential;
};

// C-bar = C_phi^alpha / C_phi^0 with C_phi^alpha the (alpha+n-1)-th absolute
// moment integral of phi on the positive axis. Indicator: n/(alpha+n) for any
// alpha > 0. SquaredExponential: 2^(alpha/2) Gamma((alpha+n)/2) / Gamma(n/2),
// integer alpha >= 1 only.
double moment_ratio_constant(const RelaxationKernel& phi, double alpha, int n);

// The unnormalized relaxed posterior at bandwidth delta:
// log phi(|A(x_u) - a| / delta) + log prior(u), with -infinity when an
// inequality constraint is violated. Bundles the compiled operator so
// samplers evaluate densities and gradients without re-tabulating basis rows.
class RelaxedTarget {
  public:
    RelaxedTarget(const SeriesPrior& prior, const InformationOperator& A,
                  RelaxationKernel phi,
                  std::vector<InequalityConstraint> constraints = {});

    const SeriesPrior& prior() const { return prior_; }
    const CompiledOperator& op() const { return op_; }
    const RelaxationKernel& relaxation() const { return phi_; }

    double residual_norm(const Eigen::VectorXd& u) const;
    bool feasible(const Eigen::VectorXd& u) const;
    double log_density(const Eigen::VectorXd& u, double delta) const;
    // False when the density vanishes at u (gradient meaningless there).
    // Also reports the residual norm and the prior log-density so callers
    // can reuse them.
    bool log_density_and_grad(const Eigen::VectorXd& u, double delta,
                              double& log_pi, Eigen::VectorXd& grad,
                              double& r, double& log_prior) const;

  private:
    SeriesPrior prior_;
    CompiledOperator op_;
    CompiledConstraints constraints_;
    RelaxationKernel phi_;
};

// Free-function form of the relaxed target density.
double relaxed_log_target(const RelaxationKernel& phi, double delta,
                          const InformationOperator& A,
                          const SeriesPrior& prior,
                          const std::vector<InequalityConstraint>& constraints,
                          const Eigen::VectorXd& u);

struct MalaConfig {
    // tau_i = tau0 * min(1, delta_i^2) unless step_sizes lists explicit
    // per-temperature values.
    double tau0 = 1e-2;
    std::vector<double> step_sizes;
    // Diagonal preconditioner entries; empty means the prior scale sequence.
    Eigen::VectorXd preconditioner;
    int steps_per_kernel = 5;

    double step_size(int rung, double delta) const;
    void validate() const;
};

struct MalaResult {
    Eigen::VectorXd state;
    int accepted = 0;
    int steps = 0;
    // Evaluations at the final state, cached for re-weighting and swaps.
    double residual_norm = 0.0;
    double log_prior = 0.0;
};

// steps_per_kernel Metropolis-adjusted Langevin steps targeting the relaxed
// posterior at schedule position rung (bandwidth delta):
//   u' = u + tau * G * grad log pi(u) + sqrt(2 tau G) * W,  G = diag(gamma)
// with the exact non-symmetric proposal correction. Proposals violating an
// inequality constraint have zero density and are rejected. From a
// zero-density state the drift is dropped and any positive-density proposal
// is accepted.
MalaResult mala_kernel(const MalaConfig& cfg, const RelaxedTarget& target,
                       int rung, double delta, const Eigen::VectorXd& u,
                       RngStream& rng);

}  // namespace bpnm
