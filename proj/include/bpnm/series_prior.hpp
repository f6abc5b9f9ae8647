// Truncated random-series priors over SeriesState.
//
// The unknown function is x = x0 + sum_i u_i phi_i with u_i = gamma_i xi_i,
// where the xi_i are i.i.d. standard Gaussian, standard Cauchy or
// Uniform(-1,1) and gamma is a summable scale sequence. Only the first
// basis.size() coefficients exist; truncation is applied to the prior itself.
#pragma once

#include <Eigen/Core>

#include "bpnm/chebyshev.hpp"
#include "bpnm/rng.hpp"

namespace bpnm {

struct ScaleSequence {
    enum class Kind { PowerDecay, Geometric };

    // gamma_i = alpha * (i+1)^(-p); p > 1 keeps gamma summable.
    static ScaleSequence power_decay(double alpha, double p);
    // gamma_i = alpha * beta^(-i); beta > 1.
    static ScaleSequence geometric(double alpha, double beta);

    double gamma(int i) const;

    Kind kind = Kind::PowerDecay;
    double alpha = 1.0;
    double exponent = 2.0;  // p for PowerDecay, beta for Geometric
};

enum class CoefficientFamily { Gaussian, Cauchy, Uniform };

class SeriesPrior {
  public:
    SeriesPrior(CoefficientFamily family, ScaleSequence scales, double x0,
                BasisSet basis);

    CoefficientFamily family() const { return family_; }
    const ScaleSequence& scales() const { return scales_; }
    double x0() const { return x0_; }
    const BasisSet& basis() const { return basis_; }
    int size() const { return basis_.size(); }
    const Eigen::VectorXd& gammas() const { return gammas_; }

    SeriesState make_state(Eigen::VectorXd u) const;

  private:
    CoefficientFamily family_;
    ScaleSequence scales_;
    double x0_;
    BasisSet basis_;
    Eigen::VectorXd gammas_;
};

// One coefficient draw u_i = gamma_i * xi_i per basis function.
Eigen::VectorXd sample_prior(const SeriesPrior& prior, RngStream& rng);

// log q(u) = sum_i [log f(u_i/gamma_i) - log gamma_i] for the family's
// standard density f. Uniform returns -infinity outside its support.
double log_density(const SeriesPrior& prior, const Eigen::VectorXd& u);

// Componentwise d/du_i of log_density. Gaussian: -u_i/gamma_i^2;
// Cauchy: -2 u_i/(gamma_i^2 + u_i^2). Uniform has no usable gradient.
Eigen::VectorXd grad_log_density(const SeriesPrior& prior,
                                 const Eigen::VectorXd& u);

}  // namespace bpnm
