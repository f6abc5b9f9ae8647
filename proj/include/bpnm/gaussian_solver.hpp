// Closed-form Gaussian conditioning: Bayesian quadrature over an interval,
// symmetric collocation for linear functionals of a Gaussian process, the
// model log evidence, and the coefficient-space conditional of a truncated
// Gaussian series prior. These are the exact oracles the samplers and the
// pipeline are tested against.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bpnm/info_operator.hpp"
#include "bpnm/series_prior.hpp"

namespace bpnm {

struct Interval {
    double lower = 0.0;
    double upper = 1.0;
};

// Prior covariance model for the unknown function. WienerMin, SquaredExp and
// IntegratedWiener are one-dimensional processes on [0, 1] (points use their
// first coordinate); SeriesInduced is the finite-rank kernel
//   k(s,t) = sum_i gamma_i^2 phi_i(s) phi_i(t)
// of a truncated Gaussian series prior and works in any dimension the basis
// supports. The mean function is constant.
struct KernelSpec {
    enum class Kind { WienerMin, SquaredExp, IntegratedWiener, SeriesInduced };

    static KernelSpec wiener_min(double mean = 0.0);
    static KernelSpec squared_exp(double ell, double mean = 0.0);
    static KernelSpec integrated_wiener(double mean = 0.0);
    // Requires a Gaussian coefficient family; the constant mean is prior.x0().
    static KernelSpec series_induced(const SeriesPrior& prior);

    Kind kind = Kind::WienerMin;
    double ell = 1.0;   // SquaredExp length scale
    double mean = 0.0;  // constant mean function value
    std::shared_ptr<const SeriesPrior> prior;  // SeriesInduced only
};

struct GaussianPosterior {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;

    int size() const { return static_cast<int>(mean.size()); }
    double scalar_mean() const;
    double scalar_variance() const;
};

// k(s, t) for the one-dimensional kernels.
double kernel_value(const KernelSpec& kernel, double s, double t);

// Cov(x(t), integral of x over I).
double kernel_interval_cov(const KernelSpec& kernel, double t,
                           const Interval& interval);

// Cov(integral of x over I, integral of x over J).
double kernel_interval_interval_cov(const KernelSpec& kernel,
                                    const Interval& i, const Interval& j);

// Posterior for Q(x) = integral of x over the domain interval (Lebesgue)
// given exact point observations x(t_i) = values_i. Scalar Gaussian
// N(m|I| + z^T K^{-1} (a - m), z0 - z^T K^{-1} z).
GaussianPosterior bq_posterior(const KernelSpec& kernel,
                               const std::vector<double>& knots,
                               const Eigen::VectorXd& values,
                               const Interval& domain = {});

// The linear weights w = K^{-1} z of the quadrature rule underlying
// bq_posterior: its mean is m|I| + w . (a - m).
Eigen::VectorXd bq_weights(const KernelSpec& kernel,
                           const std::vector<double>& knots,
                           const Interval& domain = {});

// Joint Gaussian over the query functionals given exact observations
// A_i(x) = a_i (observations carried by the operator). All functionals must
// be linear; mean m_q + G^T K^{-1} (a - m_A), covariance K_q - G^T K^{-1} G.
GaussianPosterior collocation_posterior(const KernelSpec& kernel,
                                        const InformationOperator& A,
                                        const std::vector<Functional>& queries);

// log N(a; m_A, K_A), the closed-form log evidence of the linear-Gaussian
// model (observations carried by the operator).
double gaussian_evidence(const KernelSpec& kernel,
                         const InformationOperator& A);

// Conditional law of the coefficient vector u of a truncated Gaussian series
// prior given the linear observations A(x) = a. Equivalent to
// collocation_posterior under the SeriesInduced kernel, reported in
// coefficient space so sampler ensembles can be compared componentwise.
GaussianPosterior coefficient_posterior(const SeriesPrior& prior,
                                        const InformationOperator& A);

}  // namespace bpnm
