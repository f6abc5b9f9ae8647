#include "bpnm/mala.hpp"

#include <cmath>
#include <limits>

#include "bpnm/errors.hpp"

namespace bpnm {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

RelaxationKernel RelaxationKernel::squared_exponential() {
    return RelaxationKernel{Kind::SquaredExponential};
}

RelaxationKernel RelaxationKernel::indicator() {
    return RelaxationKernel{Kind::Indicator};
}

double RelaxationKernel::log_phi(double r) const {
    if (kind == Kind::SquaredExponential) return -0.5 * r * r;
    return r < 1.0 ? 0.0 : kNegInf;
}

double moment_ratio_constant(const RelaxationKernel& phi, double alpha,
                             int n) {
    if (!(alpha > 0.0)) throw RangeError("moment ratio needs alpha > 0");
    if (n < 1) throw RangeError("moment ratio needs dimension n >= 1");
    if (phi.kind == RelaxationKernel::Kind::Indicator)
        return n / (alpha + n);
    if (alpha != std::floor(alpha) || alpha < 1.0)
        throw UnsupportedError(
            "SquaredExponential moment ratio needs integer alpha >= 1");
    return std::exp(0.5 * alpha * std::log(2.0) +
                    std::lgamma(0.5 * (alpha + n)) - std::lgamma(0.5 * n));
}

RelaxedTarget::RelaxedTarget(const SeriesPrior& prior,
                             const InformationOperator& A,
                             RelaxationKernel phi,
                             std::vector<InequalityConstraint> constraints)
    : prior_(prior),
      op_(A, prior.basis(), prior.x0()),
      constraints_(constraints, prior.basis(), prior.x0()),
      phi_(phi) {}

double RelaxedTarget::residual_norm(const Eigen::VectorXd& u) const {
    return op_.residual_norm(u);
}

bool RelaxedTarget::feasible(const Eigen::VectorXd& u) const {
    return constraints_.satisfied(u);
}

double RelaxedTarget::log_density(const Eigen::VectorXd& u,
                                  double delta) const {
    if (!(delta > 0.0)) throw RangeError("relaxation bandwidth must be > 0");
    if (!constraints_.satisfied(u)) return kNegInf;
    double lp = bpnm::log_density(prior_, u);
    if (lp == kNegInf) return kNegInf;
    return phi_.log_phi(op_.residual_norm(u) / delta) + lp;
}

bool RelaxedTarget::log_density_and_grad(const Eigen::VectorXd& u,
                                         double delta, double& log_pi,
                                         Eigen::VectorXd& grad, double& r,
                                         double& log_prior) const {
    if (!(delta > 0.0)) throw RangeError("relaxation bandwidth must be > 0");
    Eigen::VectorXd dr;
    r = op_.residual_norm_and_grad(u, dr);
    log_prior = bpnm::log_density(prior_, u);
    if (!constraints_.satisfied(u) || log_prior == kNegInf) {
        log_pi = kNegInf;
        return false;
    }
    double lphi = phi_.log_phi(r / delta);
    log_pi = lphi + log_prior;
    if (log_pi == kNegInf) return false;
    grad = grad_log_density(prior_, u);
    if (phi_.kind == RelaxationKernel::Kind::SquaredExponential)
        // d/du of -r^2/(2 delta^2) is -(r/delta^2) dr/du.
        grad -= (r / (delta * delta)) * dr;
    return true;
}

double relaxed_log_target(const RelaxationKernel& phi, double delta,
                          const InformationOperator& A,
                          const SeriesPrior& prior,
                          const std::vector<InequalityConstraint>& constraints,
                          const Eigen::VectorXd& u) {
    return RelaxedTarget(prior, A, phi, constraints).log_density(u, delta);
}

double MalaConfig::step_size(int rung, double delta) const {
    if (!step_sizes.empty()) {
        if (rung < 0 || rung >= static_cast<int>(step_sizes.size()))
            throw RangeError("no step size configured for this temperature");
        return step_sizes[static_cast<std::size_t>(rung)];
    }
    return tau0 * std::min(1.0, delta * delta);
}

void MalaConfig::validate() const {
    if (!(tau0 > 0.0)) throw RangeError("MALA base step size must be > 0");
    for (double t : step_sizes)
        if (!(t > 0.0)) throw RangeError("MALA step sizes must be > 0");
    if ((preconditioner.array() <= 0.0).any())
        throw RangeError("MALA preconditioner entries must be > 0");
    if (steps_per_kernel < 1)
        throw RangeError("MALA needs at least one step per kernel");
}

MalaResult mala_kernel(const MalaConfig& cfg, const RelaxedTarget& target,
                       int rung, double delta, const Eigen::VectorXd& u,
                       RngStream& rng) {
    cfg.validate();
    double tau = cfg.step_size(rung, delta);
    Eigen::VectorXd gamma = cfg.preconditioner.size() > 0
                                ? cfg.preconditioner
                                : target.prior().gammas();
    if (gamma.size() != u.size())
        throw RangeError("preconditioner dimension does not match state");
    Eigen::VectorXd drift_scale = tau * gamma.array();
    Eigen::VectorXd noise_scale = (2.0 * tau * gamma.array()).sqrt();

    MalaResult out;
    out.state = u;
    out.steps = cfg.steps_per_kernel;

    double log_pi;
    Eigen::VectorXd grad(u.size());
    bool have_grad = target.log_density_and_grad(
        out.state, delta, log_pi, grad, out.residual_norm, out.log_prior);

    Eigen::VectorXd prop(u.size()), prop_grad(u.size()), noise(u.size());
    for (int s = 0; s < cfg.steps_per_kernel; ++s) {
        for (int j = 0; j < noise.size(); ++j) noise[j] = rng.normal();
        Eigen::VectorXd mean_fwd =
            have_grad
                ? Eigen::VectorXd(out.state.array() +
                                  drift_scale.array() * grad.array())
                : out.state;
        prop = mean_fwd.array() + noise_scale.array() * noise.array();

        double prop_log_pi, prop_r, prop_log_prior;
        bool prop_ok = target.log_density_and_grad(
            prop, delta, prop_log_pi, prop_grad, prop_r, prop_log_prior);

        double accept_u = rng.uniform();
        bool accept;
        if (!have_grad) {
            // Zero-density current state: recover to anywhere feasible.
            accept = prop_ok;
        } else if (!prop_ok) {
            accept = false;
        } else {
            // q(b | a) = N(b; a + tau G grad(a), 2 tau G), constants cancel.
            Eigen::VectorXd mean_rev =
                prop.array() + drift_scale.array() * prop_grad.array();
            double log_q_fwd =
                -((prop - mean_fwd).array().square() /
                  (4.0 * tau * gamma.array()))
                     .sum();
            double log_q_rev =
                -((out.state - mean_rev).array().square() /
                  (4.0 * tau * gamma.array()))
                     .sum();
            double log_alpha = prop_log_pi - log_pi + log_q_rev - log_q_fwd;
            accept = std::log(accept_u) < log_alpha;
        }
        if (accept) {
            out.state = prop;
            log_pi = prop_log_pi;
            grad = prop_grad;
            out.residual_norm = prop_r;
            out.log_prior = prop_log_prior;
            have_grad = prop_ok;
            ++out.accepted;
        }
    }
    return out;
}

}  // namespace bpnm
