#include "bpnm/gaussian_solver.hpp"

#include <cmath>
#include <string>

#include "bpnm/errors.hpp"

namespace bpnm {

KernelSpec KernelSpec::wiener_min(double mean) {
    KernelSpec k;
    k.kind = Kind::WienerMin;
    k.mean = mean;
    return k;
}

KernelSpec KernelSpec::squared_exp(double ell, double mean) {
    if (!(ell > 0.0)) throw RangeError("SquaredExp length scale must be > 0");
    KernelSpec k;
    k.kind = Kind::SquaredExp;
    k.ell = ell;
    k.mean = mean;
    return k;
}

KernelSpec KernelSpec::integrated_wiener(double mean) {
    KernelSpec k;
    k.kind = Kind::IntegratedWiener;
    k.mean = mean;
    return k;
}

KernelSpec KernelSpec::series_induced(const SeriesPrior& prior) {
    if (prior.family() != CoefficientFamily::Gaussian)
        throw UnsupportedError(
            "SeriesInduced kernel requires a Gaussian coefficient family");
    KernelSpec k;
    k.kind = Kind::SeriesInduced;
    k.mean = prior.x0();
    k.prior = std::make_shared<SeriesPrior>(prior);
    return k;
}

double GaussianPosterior::scalar_mean() const {
    if (mean.size() != 1) throw RangeError("posterior is not scalar");
    return mean[0];
}

double GaussianPosterior::scalar_variance() const {
    if (covariance.rows() != 1 || covariance.cols() != 1)
        throw RangeError("posterior is not scalar");
    return covariance(0, 0);
}

namespace {

// Probabilists' Hermite polynomials, needed for SquaredExp derivatives up to
// fourth total order (PdeInterior x PdeInterior Gram entries).
double hermite(int n, double r) {
    switch (n) {
        case 0: return 1.0;
        case 1: return r;
        case 2: return r * r - 1.0;
        case 3: return r * (r * r - 3.0);
        case 4: return r * r * (r * r - 6.0) + 3.0;
    }
    throw UnsupportedError("kernel derivatives beyond fourth order");
}

// d^a/ds^a d^b/dt^b exp(-(s-t)^2 / (2 ell^2)).
double sqexp_deriv(double ell, int a, int b, double s, double t) {
    double r = (s - t) / ell;
    double v = hermite(a + b, r) * std::exp(-0.5 * r * r) /
               std::pow(ell, a + b);
    return (a % 2 == 0) ? v : -v;
}

// int_0^c min(s, t) ds.
double wiener_z0c(double t, double c) {
    return t >= c ? 0.5 * c * c : t * c - 0.5 * t * t;
}

// Integrated Wiener kernel (zero initial value and slope at 0).
double iw_kernel(double s, double t) {
    if (s > t) std::swap(s, t);
    return s * s * (t / 2.0 - s / 6.0);
}

// int_0^c iw_kernel(s, t) ds.
double iw_z0c(double t, double c) {
    if (c <= t) return c * c * c * (t / 6.0 - c / 24.0);
    return t * t * (c * c / 4.0 - t * c / 6.0 + t * t / 24.0);
}

// Double integral of min over [0,c] x [0,d]; equal to iw_kernel(c, d).
double wiener_w(double c, double d) { return iw_kernel(c, d); }

// Double integral of iw_kernel over [0,c] x [0,d].
double iw_w(double c, double d) {
    if (c > d) std::swap(c, d);
    double c2 = c * c;
    return c * c2 * (d * d / 12.0 - c * d / 24.0 + c2 / 120.0);
}

// F2''(x) = exp(-x^2 / (2 ell^2)), F2(0) = F2'(0) = 0; difference-kernel
// double integrals follow by inclusion-exclusion.
double sqexp_f2(double ell, double x) {
    double y = x / (ell * std::sqrt(2.0));
    return ell * std::sqrt(M_PI / 2.0) * x * std::erf(y) +
           ell * ell * (std::exp(-y * y) - 1.0);
}

void check_interval(const Interval& iv) {
    if (!(iv.lower < iv.upper))
        throw RangeError("integration interval must have lower < upper");
}

// Reduce a linear functional to (derivative order, scale factor, location)
// for the one-dimensional process kernels.
struct LineFunctional {
    int order;
    double coeff;
    double t;
};

LineFunctional line_functional(const Functional& f) {
    switch (f.kind) {
        case Functional::Kind::PointEval: return {0, 1.0, f.t.t1};
        case Functional::Kind::DerivEval:
            if (f.d2 != 0)
                throw UnsupportedError(
                    "second-coordinate derivatives need a SeriesInduced kernel");
            return {f.d1, 1.0, f.t.t1};
        case Functional::Kind::PdeInterior: return {2, -f.kappa, f.t.t1};
        case Functional::Kind::NeumannBoundary:
            if (f.axis != 0)
                throw UnsupportedError(
                    "second-axis Neumann needs a SeriesInduced kernel");
            return {1, f.sign, f.t.t1};
        case Functional::Kind::OdeResidualPainleve:
            throw LinearityError("nonlinear functional in a Gaussian solve");
    }
    throw UnsupportedError("unknown functional kind");
}

double pair_cov(const KernelSpec& kernel, const LineFunctional& fi,
                const LineFunctional& fj) {
    switch (kernel.kind) {
        case KernelSpec::Kind::SquaredExp:
            return fi.coeff * fj.coeff *
                   sqexp_deriv(kernel.ell, fi.order, fj.order, fi.t, fj.t);
        case KernelSpec::Kind::WienerMin:
        case KernelSpec::Kind::IntegratedWiener:
            if (fi.order != 0 || fj.order != 0)
                throw UnsupportedError(
                    "derivative functionals need a SquaredExp or "
                    "SeriesInduced kernel");
            return fi.coeff * fj.coeff * kernel_value(kernel, fi.t, fj.t);
        case KernelSpec::Kind::SeriesInduced:
            break;
    }
    throw UnsupportedError("pair_cov does not handle SeriesInduced");
}

// A functional applied to the constant mean function.
double mean_under(const KernelSpec& kernel, const LineFunctional& f) {
    return f.order == 0 ? f.coeff * kernel.mean : 0.0;
}

void require_linear(const std::vector<Functional>& fs) {
    for (const Functional& f : fs)
        if (!f.is_linear())
            throw LinearityError("nonlinear functional in a Gaussian solve");
}

// Cholesky with a trace-scaled nugget; failure carries a condition estimate.
Eigen::LLT<Eigen::MatrixXd> factor_spd(Eigen::MatrixXd k, const char* what) {
    int n = static_cast<int>(k.rows());
    double scale = n > 0 ? k.trace() / n : 0.0;
    if (!(scale > 0.0)) scale = 1.0;
    k.diagonal().array() += 1e-10 * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            k, Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues().minCoeff();
        double hi = es.eigenvalues().maxCoeff();
        double rcond = hi > 0.0 ? lo / hi : 0.0;
        throw ConditioningError(std::string(what) + ": Gram matrix is not "
                                "positive definite after nugget",
                                rcond);
    }
    return llt;
}

void check_distinct(const std::vector<double>& knots) {
    for (std::size_t i = 0; i < knots.size(); ++i)
        for (std::size_t j = i + 1; j < knots.size(); ++j)
            if (knots[i] == knots[j])
                throw RangeError("quadrature knots must be distinct");
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
    return 0.5 * (m + m.transpose());
}

// Functional rows against the series basis, evaluated on the zero state.
Eigen::MatrixXd series_rows(const SeriesPrior& prior,
                            const std::vector<Functional>& fs) {
    const BasisSet& basis = prior.basis();
    SeriesState zero{basis, prior.x0(), Eigen::VectorXd::Zero(basis.size())};
    Eigen::MatrixXd rows(static_cast<int>(fs.size()), basis.size());
    for (std::size_t i = 0; i < fs.size(); ++i)
        rows.row(static_cast<int>(i)) = jacobian_row(fs[i], zero).transpose();
    return rows;
}

Eigen::VectorXd series_means(const SeriesPrior& prior,
                             const std::vector<Functional>& fs) {
    const BasisSet& basis = prior.basis();
    SeriesState zero{basis, prior.x0(), Eigen::VectorXd::Zero(basis.size())};
    Eigen::VectorXd m(static_cast<int>(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i)
        m[static_cast<int>(i)] = eval_functional(fs[i], zero);
    return m;
}

// Gram blocks for observed (o) and query (q) functionals under any kernel.
struct GramBlocks {
    Eigen::MatrixXd k_oo, k_oq, k_qq;
    Eigen::VectorXd m_o, m_q;
};

GramBlocks build_blocks(const KernelSpec& kernel,
                        const std::vector<Functional>& obs,
                        const std::vector<Functional>& queries) {
    require_linear(obs);
    require_linear(queries);
    GramBlocks g;
    int n = static_cast<int>(obs.size());
    int q = static_cast<int>(queries.size());
    if (kernel.kind == KernelSpec::Kind::SeriesInduced) {
        const SeriesPrior& prior = *kernel.prior;
        Eigen::MatrixXd ro = series_rows(prior, obs);
        Eigen::MatrixXd rq = series_rows(prior, queries);
        Eigen::VectorXd d = prior.gammas().array().square();
        g.k_oo = ro * d.asDiagonal() * ro.transpose();
        g.k_oq = ro * d.asDiagonal() * rq.transpose();
        g.k_qq = rq * d.asDiagonal() * rq.transpose();
        g.m_o = series_means(prior, obs);
        g.m_q = series_means(prior, queries);
        return g;
    }
    std::vector<LineFunctional> lo, lq;
    lo.reserve(obs.size());
    lq.reserve(queries.size());
    for (const Functional& f : obs) lo.push_back(line_functional(f));
    for (const Functional& f : queries) lq.push_back(line_functional(f));
    g.k_oo.resize(n, n);
    g.k_oq.resize(n, q);
    g.k_qq.resize(q, q);
    g.m_o.resize(n);
    g.m_q.resize(q);
    for (int i = 0; i < n; ++i) {
        g.m_o[i] = mean_under(kernel, lo[static_cast<std::size_t>(i)]);
        for (int j = 0; j < n; ++j)
            g.k_oo(i, j) = pair_cov(kernel, lo[static_cast<std::size_t>(i)],
                                    lo[static_cast<std::size_t>(j)]);
        for (int j = 0; j < q; ++j)
            g.k_oq(i, j) = pair_cov(kernel, lo[static_cast<std::size_t>(i)],
                                    lq[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < q; ++i) {
        g.m_q[i] = mean_under(kernel, lq[static_cast<std::size_t>(i)]);
        for (int j = 0; j < q; ++j)
            g.k_qq(i, j) = pair_cov(kernel, lq[static_cast<std::size_t>(i)],
                                    lq[static_cast<std::size_t>(j)]);
    }
    return g;
}

void check_operator(const InformationOperator& A) {
    if (A.observed.size() != A.size())
        throw RangeError("observed vector length does not match operator");
    if (A.threshold)
        throw LinearityError("threshold map breaks linearity; remove it for "
                             "closed-form conditioning");
}

}  // namespace

double kernel_value(const KernelSpec& kernel, double s, double t) {
    switch (kernel.kind) {
        case KernelSpec::Kind::WienerMin: return std::min(s, t);
        case KernelSpec::Kind::IntegratedWiener: return iw_kernel(s, t);
        case KernelSpec::Kind::SquaredExp: {
            double r = (s - t) / kernel.ell;
            return std::exp(-0.5 * r * r);
        }
        case KernelSpec::Kind::SeriesInduced: {
            const SeriesPrior& p = *kernel.prior;
            Eigen::VectorXd rs = p.basis().row_values(Point{s, 0.0});
            Eigen::VectorXd rt = p.basis().row_values(Point{t, 0.0});
            return (rs.array() * rt.array() * p.gammas().array().square())
                .sum();
        }
    }
    throw UnsupportedError("unknown kernel kind");
}

double kernel_interval_cov(const KernelSpec& kernel, double t,
                           const Interval& iv) {
    check_interval(iv);
    switch (kernel.kind) {
        case KernelSpec::Kind::WienerMin:
            return wiener_z0c(t, iv.upper) - wiener_z0c(t, iv.lower);
        case KernelSpec::Kind::IntegratedWiener:
            return iw_z0c(t, iv.upper) - iw_z0c(t, iv.lower);
        case KernelSpec::Kind::SquaredExp: {
            double c = kernel.ell * std::sqrt(2.0);
            return kernel.ell * std::sqrt(M_PI / 2.0) *
                   (std::erf((iv.upper - t) / c) -
                    std::erf((iv.lower - t) / c));
        }
        case KernelSpec::Kind::SeriesInduced:
            break;
    }
    throw UnsupportedError("interval covariance needs a process kernel");
}

double kernel_interval_interval_cov(const KernelSpec& kernel,
                                    const Interval& i, const Interval& j) {
    check_interval(i);
    check_interval(j);
    switch (kernel.kind) {
        case KernelSpec::Kind::WienerMin:
            return wiener_w(i.upper, j.upper) - wiener_w(i.upper, j.lower) -
                   wiener_w(i.lower, j.upper) + wiener_w(i.lower, j.lower);
        case KernelSpec::Kind::IntegratedWiener:
            return iw_w(i.upper, j.upper) - iw_w(i.upper, j.lower) -
                   iw_w(i.lower, j.upper) + iw_w(i.lower, j.lower);
        case KernelSpec::Kind::SquaredExp:
            return sqexp_f2(kernel.ell, i.upper - j.lower) -
                   sqexp_f2(kernel.ell, i.upper - j.upper) -
                   sqexp_f2(kernel.ell, i.lower - j.lower) +
                   sqexp_f2(kernel.ell, i.lower - j.upper);
        case KernelSpec::Kind::SeriesInduced:
            break;
    }
    throw UnsupportedError("interval covariance needs a process kernel");
}

GaussianPosterior bq_posterior(const KernelSpec& kernel,
                               const std::vector<double>& knots,
                               const Eigen::VectorXd& values,
                               const Interval& domain) {
    check_interval(domain);
    check_distinct(knots);
    int n = static_cast<int>(knots.size());
    if (values.size() != n)
        throw RangeError("quadrature values length does not match knots");
    double length = domain.upper - domain.lower;
    double z0 = kernel_interval_interval_cov(kernel, domain, domain);
    GaussianPosterior post;
    post.mean.resize(1);
    post.covariance.resize(1, 1);
    if (n == 0) {
        post.mean[0] = kernel.mean * length;
        post.covariance(0, 0) = z0;
        return post;
    }
    Eigen::MatrixXd k(n, n);
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) {
        z[i] = kernel_interval_cov(kernel, knots[static_cast<std::size_t>(i)],
                                   domain);
        for (int j = 0; j < n; ++j)
            k(i, j) = kernel_value(kernel, knots[static_cast<std::size_t>(i)],
                                   knots[static_cast<std::size_t>(j)]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt = factor_spd(std::move(k), "bq_posterior");
    Eigen::VectorXd w = llt.solve(z);
    Eigen::VectorXd centered =
        values - Eigen::VectorXd::Constant(n, kernel.mean);
    post.mean[0] = kernel.mean * length + w.dot(centered);
    post.covariance(0, 0) = z0 - w.dot(z);
    return post;
}

Eigen::VectorXd bq_weights(const KernelSpec& kernel,
                           const std::vector<double>& knots,
                           const Interval& domain) {
    check_interval(domain);
    check_distinct(knots);
    int n = static_cast<int>(knots.size());
    Eigen::MatrixXd k(n, n);
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) {
        z[i] = kernel_interval_cov(kernel, knots[static_cast<std::size_t>(i)],
                                   domain);
        for (int j = 0; j < n; ++j)
            k(i, j) = kernel_value(kernel, knots[static_cast<std::size_t>(i)],
                                   knots[static_cast<std::size_t>(j)]);
    }
    return factor_spd(std::move(k), "bq_weights").solve(z);
}

GaussianPosterior collocation_posterior(
    const KernelSpec& kernel, const InformationOperator& A,
    const std::vector<Functional>& queries) {
    check_operator(A);
    GramBlocks g = build_blocks(kernel, A.functionals, queries);
    GaussianPosterior post;
    if (A.size() == 0) {
        post.mean = g.m_q;
        post.covariance = symmetrized(g.k_qq);
        return post;
    }
    Eigen::LLT<Eigen::MatrixXd> llt =
        factor_spd(std::move(g.k_oo), "collocation_posterior");
    Eigen::MatrixXd solved = llt.solve(g.k_oq);  // K^{-1} G
    post.mean = g.m_q + solved.transpose() * (A.observed - g.m_o);
    post.covariance = symmetrized(g.k_qq - g.k_oq.transpose() * solved);
    return post;
}

double gaussian_evidence(const KernelSpec& kernel,
                         const InformationOperator& A) {
    check_operator(A);
    int n = A.size();
    if (n == 0) throw RangeError("evidence needs at least one observation");
    GramBlocks g = build_blocks(kernel, A.functionals, {});
    Eigen::LLT<Eigen::MatrixXd> llt =
        factor_spd(std::move(g.k_oo), "gaussian_evidence");
    Eigen::VectorXd centered = A.observed - g.m_o;
    double quad = centered.dot(llt.solve(centered));
    double logdet =
        2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return -0.5 * (n * std::log(2.0 * M_PI) + logdet + quad);
}

GaussianPosterior coefficient_posterior(const SeriesPrior& prior,
                                        const InformationOperator& A) {
    check_operator(A);
    if (prior.family() != CoefficientFamily::Gaussian)
        throw UnsupportedError(
            "coefficient posterior requires a Gaussian coefficient family");
    require_linear(A.functionals);
    Eigen::VectorXd d = prior.gammas().array().square();
    GaussianPosterior post;
    if (A.size() == 0) {
        post.mean = Eigen::VectorXd::Zero(prior.size());
        post.covariance = d.asDiagonal();
        return post;
    }
    Eigen::MatrixXd j = series_rows(prior, A.functionals);
    Eigen::VectorXd c = series_means(prior, A.functionals);
    Eigen::MatrixXd jd = j * d.asDiagonal();  // J D, n x N
    Eigen::LLT<Eigen::MatrixXd> llt =
        factor_spd(jd * j.transpose(), "coefficient_posterior");
    Eigen::MatrixXd solved = llt.solve(jd);  // S^{-1} J D
    post.mean = solved.transpose() * (A.observed - c);
    post.covariance =
        symmetrized(Eigen::MatrixXd(d.asDiagonal()) -
                    jd.transpose() * solved);
    return post;
}

}  // namespace bpnm
