#include "bpnm/series_prior.hpp"

#include <cmath>
#include <limits>

#include "bpnm/errors.hpp"

namespace bpnm {

namespace {
constexpr double kLog2Pi = 1.83787706640934548356065947281;
constexpr double kLogPi = 1.14472988584940017414342735135;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

ScaleSequence ScaleSequence::power_decay(double alpha, double p) {
    if (alpha < 0.0) throw RangeError("scale alpha must be nonnegative");
    if (!(p > 1.0)) throw RangeError("power decay requires p > 1");
    ScaleSequence s;
    s.kind = Kind::PowerDecay;
    s.alpha = alpha;
    s.exponent = p;
    return s;
}

ScaleSequence ScaleSequence::geometric(double alpha, double beta) {
    if (alpha < 0.0) throw RangeError("scale alpha must be nonnegative");
    if (!(beta > 1.0)) throw RangeError("geometric decay requires beta > 1");
    ScaleSequence s;
    s.kind = Kind::Geometric;
    s.alpha = alpha;
    s.exponent = beta;
    return s;
}

double ScaleSequence::gamma(int i) const {
    if (i < 0) throw IndexError("negative scale index");
    if (kind == Kind::PowerDecay)
        return alpha * std::pow(static_cast<double>(i + 1), -exponent);
    return alpha * std::pow(exponent, static_cast<double>(-i));
}

SeriesPrior::SeriesPrior(CoefficientFamily family, ScaleSequence scales,
                         double x0, BasisSet basis)
    : family_(family),
      scales_(scales),
      x0_(x0),
      basis_(std::move(basis)),
      gammas_(basis_.size()) {
    for (int i = 0; i < basis_.size(); ++i) gammas_[i] = scales_.gamma(i);
}

SeriesState SeriesPrior::make_state(Eigen::VectorXd u) const {
    if (u.size() != basis_.size())
        throw RangeError("coefficient length does not match basis size");
    return SeriesState{basis_, x0_, std::move(u)};
}

Eigen::VectorXd sample_prior(const SeriesPrior& prior, RngStream& rng) {
    Eigen::VectorXd u(prior.size());
    for (int i = 0; i < prior.size(); ++i) {
        double xi;
        switch (prior.family()) {
            case CoefficientFamily::Gaussian: xi = rng.normal(); break;
            case CoefficientFamily::Cauchy: xi = rng.cauchy(); break;
            default: xi = rng.uniform(-1.0, 1.0); break;
        }
        u[i] = prior.gammas()[i] * xi;
    }
    return u;
}

double log_density(const SeriesPrior& prior, const Eigen::VectorXd& u) {
    const Eigen::VectorXd& g = prior.gammas();
    if (u.size() != g.size())
        throw RangeError("coefficient length does not match basis size");
    if ((g.array() <= 0.0).any())
        throw UnsupportedError(
            "log density undefined for a degenerate (zero) scale");
    double lp = 0.0;
    switch (prior.family()) {
        case CoefficientFamily::Gaussian:
            for (int i = 0; i < u.size(); ++i) {
                double z = u[i] / g[i];
                lp += -0.5 * kLog2Pi - std::log(g[i]) - 0.5 * z * z;
            }
            break;
        case CoefficientFamily::Cauchy:
            for (int i = 0; i < u.size(); ++i) {
                double z = u[i] / g[i];
                lp += -kLogPi - std::log(g[i]) - std::log1p(z * z);
            }
            break;
        case CoefficientFamily::Uniform:
            for (int i = 0; i < u.size(); ++i) {
                if (std::abs(u[i]) > g[i]) return -kInf;
                lp -= std::log(2.0 * g[i]);
            }
            break;
    }
    return lp;
}

Eigen::VectorXd grad_log_density(const SeriesPrior& prior,
                                 const Eigen::VectorXd& u) {
    const Eigen::VectorXd& g = prior.gammas();
    if (u.size() != g.size())
        throw RangeError("coefficient length does not match basis size");
    Eigen::VectorXd grad(u.size());
    switch (prior.family()) {
        case CoefficientFamily::Gaussian:
            grad = -u.array() / g.array().square();
            break;
        case CoefficientFamily::Cauchy:
            grad = -2.0 * u.array() / (g.array().square() + u.array().square());
            break;
        case CoefficientFamily::Uniform:
            throw UnsupportedError(
                "Uniform coefficient family has no log-density gradient");
    }
    return grad;
}

}  // namespace bpnm
