#include "bpnm/info_operator.hpp"

#include <cmath>

#include "bpnm/errors.hpp"

namespace bpnm {

Functional Functional::point_eval(Point t) {
    Functional f;
    f.kind = Kind::PointEval;
    f.t = t;
    return f;
}

Functional Functional::deriv_eval(Point t, int d1, int d2) {
    if (d1 < 0 || d2 < 0 || d1 + d2 < 1 || d1 + d2 > 2)
        throw UnsupportedError("derivative functional order must be 1 or 2");
    Functional f;
    f.kind = Kind::DerivEval;
    f.t = t;
    f.d1 = d1;
    f.d2 = d2;
    return f;
}

Functional Functional::ode_residual_painleve(double t) {
    Functional f;
    f.kind = Kind::OdeResidualPainleve;
    f.t = Point{t, 0.0};
    return f;
}

Functional Functional::pde_interior(Point t, double kappa) {
    Functional f;
    f.kind = Kind::PdeInterior;
    f.t = t;
    f.kappa = kappa;
    return f;
}

Functional Functional::neumann_boundary(Point t, int axis, double sign) {
    if (axis != 0 && axis != 1)
        throw RangeError("Neumann axis must be 0 or 1");
    if (sign != 1.0 && sign != -1.0)
        throw RangeError("Neumann sign must be +1 or -1");
    Functional f;
    f.kind = Kind::NeumannBoundary;
    f.t = t;
    f.axis = axis;
    f.sign = sign;
    return f;
}

double eval_functional(const Functional& f, const SeriesState& x) {
    switch (f.kind) {
        case Functional::Kind::PointEval: return eval_series(x, f.t);
        case Functional::Kind::DerivEval:
            return eval_series_deriv(x, f.t, f.d1, f.d2);
        case Functional::Kind::OdeResidualPainleve: {
            double v = eval_series(x, f.t);
            return eval_series_deriv(x, f.t, 2, 0) - v * v;
        }
        case Functional::Kind::PdeInterior: {
            double lap = eval_series_deriv(x, f.t, 2, 0);
            if (x.basis.dimension() == 2) lap += eval_series_deriv(x, f.t, 0, 2);
            return -f.kappa * lap;
        }
        case Functional::Kind::NeumannBoundary:
            return f.sign * (f.axis == 0 ? eval_series_deriv(x, f.t, 1, 0)
                                         : eval_series_deriv(x, f.t, 0, 1));
    }
    throw UnsupportedError("unknown functional kind");
}

Eigen::VectorXd jacobian_row(const Functional& f, const SeriesState& x) {
    const BasisSet& b = x.basis;
    switch (f.kind) {
        case Functional::Kind::PointEval: return b.row_values(f.t);
        case Functional::Kind::DerivEval:
            return b.row_derivatives(f.t, f.d1, f.d2);
        case Functional::Kind::OdeResidualPainleve:
            // d/du_j [x'' - x^2] = phi_j'' - 2 x(t) phi_j
            return b.row_derivatives(f.t, 2, 0) -
                   2.0 * eval_series(x, f.t) * b.row_values(f.t);
        case Functional::Kind::PdeInterior: {
            Eigen::VectorXd row = b.row_derivatives(f.t, 2, 0);
            if (b.dimension() == 2) row += b.row_derivatives(f.t, 0, 2);
            return -f.kappa * row;
        }
        case Functional::Kind::NeumannBoundary:
            return f.sign * (f.axis == 0 ? b.row_derivatives(f.t, 1, 0)
                                         : b.row_derivatives(f.t, 0, 1));
    }
    throw UnsupportedError("unknown functional kind");
}

namespace {

Eigen::VectorXd raw_values(const InformationOperator& A, const SeriesState& x) {
    Eigen::VectorXd v(A.size());
    for (int i = 0; i < A.size(); ++i)
        v[i] = eval_functional(A.functionals[static_cast<std::size_t>(i)], x);
    return v;
}

// The threshold map: rescale to norm lambda_max when |v| exceeds it.
void apply_threshold(const std::optional<double>& threshold,
                     Eigen::VectorXd& v) {
    if (!threshold) return;
    double norm = v.norm();
    if (norm > *threshold) v *= *threshold / norm;
}

}  // namespace

Eigen::VectorXd apply_operator(const InformationOperator& A,
                               const SeriesState& x) {
    Eigen::VectorXd v = raw_values(A, x);
    apply_threshold(A.threshold, v);
    return v;
}

Eigen::VectorXd residual(const InformationOperator& A, const SeriesState& x) {
    if (A.observed.size() != A.size())
        throw RangeError("observed vector length does not match operator");
    return apply_operator(A, x) - A.observed;
}

std::pair<double, Eigen::VectorXd> residual_norm_and_grad(
    const InformationOperator& A, const SeriesState& x) {
    if (A.observed.size() != A.size())
        throw RangeError("observed vector length does not match operator");
    Eigen::VectorXd v = raw_values(A, x);
    if (A.threshold && v.norm() > *A.threshold)
        throw ThresholdGradientError(
            "residual gradient unavailable while the threshold map rescales");
    Eigen::VectorXd res = v - A.observed;
    double r = res.norm();
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(x.u.size());
    if (r > 0.0) {
        for (int i = 0; i < A.size(); ++i)
            grad += jacobian_row(A.functionals[static_cast<std::size_t>(i)], x) *
                    (res[i] / r);
    }
    return {r, grad};
}

bool check_inequalities(const std::vector<InequalityConstraint>& cs,
                        const SeriesState& x) {
    for (const InequalityConstraint& c : cs) {
        double v = eval_functional(c.functional, x);
        if (c.direction == InequalityConstraint::Direction::LessEqual) {
            if (v > 0.0) return false;
        } else {
            if (v < 0.0) return false;
        }
    }
    return true;
}

CompiledOperator::CompiledOperator(const InformationOperator& A,
                                   const BasisSet& basis, double x0)
    : j0_(A.size(), basis.size()),
      b_(A.size(), basis.size()),
      c_(A.size()),
      flag_(A.size()),
      a_(A.observed),
      threshold_(A.threshold),
      x0_(x0),
      any_nonlinear_(false) {
    if (A.observed.size() != A.size())
        throw RangeError("observed vector length does not match operator");
    SeriesState zero{basis, x0, Eigen::VectorXd::Zero(basis.size())};
    for (int i = 0; i < A.size(); ++i) {
        const Functional& f = A.functionals[static_cast<std::size_t>(i)];
        if (f.kind == Functional::Kind::OdeResidualPainleve) {
            j0_.row(i) = basis.row_derivatives(f.t, 2, 0).transpose();
            b_.row(i) = basis.row_values(f.t).transpose();
            c_[i] = 0.0;  // a constant offset has zero second derivative
            flag_[i] = 1.0;
            any_nonlinear_ = true;
        } else {
            j0_.row(i) = jacobian_row(f, zero).transpose();
            b_.row(i).setZero();
            c_[i] = eval_functional(f, zero);
            flag_[i] = 0.0;
        }
    }
}

Eigen::VectorXd CompiledOperator::raw_values(const Eigen::VectorXd& u) const {
    Eigen::VectorXd v = j0_ * u + c_;
    if (any_nonlinear_) {
        Eigen::VectorXd q = flag_.array() * (x0_ + (b_ * u).array());
        v.array() -= q.array().square();
    }
    return v;
}

double CompiledOperator::residual_norm(const Eigen::VectorXd& u) const {
    Eigen::VectorXd v = raw_values(u);
    apply_threshold(threshold_, v);
    return (v - a_).norm();
}

double CompiledOperator::residual_norm_and_grad(const Eigen::VectorXd& u,
                                                Eigen::VectorXd& grad) const {
    Eigen::VectorXd v = j0_ * u + c_;
    Eigen::VectorXd q;
    if (any_nonlinear_) {
        q = flag_.array() * (x0_ + (b_ * u).array());
        v.array() -= q.array().square();
    }
    if (threshold_ && v.norm() > *threshold_)
        throw ThresholdGradientError(
            "residual gradient unavailable while the threshold map rescales");
    Eigen::VectorXd res = v - a_;
    double r = res.norm();
    if (r > 0.0) {
        grad = j0_.transpose() * (res / r);
        if (any_nonlinear_)
            grad -= b_.transpose() * (2.0 * q.array() * res.array() / r).matrix();
    } else {
        grad.setZero(u.size());
    }
    return r;
}

CompiledConstraints::CompiledConstraints(
    const std::vector<InequalityConstraint>& cs, const BasisSet& basis,
    double x0)
    : rows_(static_cast<int>(cs.size()), basis.size()),
      c_(static_cast<int>(cs.size())),
      sign_(static_cast<int>(cs.size())) {
    SeriesState zero{basis, x0, Eigen::VectorXd::Zero(basis.size())};
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (!cs[i].functional.is_linear())
            throw UnsupportedError(
                "inequality constraints support linear functionals only");
        int r = static_cast<int>(i);
        rows_.row(r) = jacobian_row(cs[i].functional, zero).transpose();
        c_[r] = eval_functional(cs[i].functional, zero);
        sign_[r] =
            cs[i].direction == InequalityConstraint::Direction::LessEqual ? 1.0
                                                                          : -1.0;
    }
}

bool CompiledConstraints::satisfied(const Eigen::VectorXd& u) const {
    if (rows_.rows() == 0) return true;
    Eigen::VectorXd v = rows_ * u + c_;
    return ((sign_.array() * v.array()) <= 0.0).all();
}

InformationOperator painleve_operator(int m) {
    if (m < 2) throw RangeError("Painleve operator needs at least 2 points");
    InformationOperator A;
    A.observed.resize(m + 2);
    for (int i = 0; i < m; ++i) {
        double t = 10.0 * static_cast<double>(i) / (m - 1);
        A.functionals.push_back(Functional::ode_residual_painleve(t));
        A.observed[i] = -t;  // x'' - x^2 = -t encodes x'' = x^2 - t
    }
    A.functionals.push_back(Functional::point_eval(Point{0.0, 0.0}));
    A.observed[m] = 0.0;
    A.functionals.push_back(Functional::point_eval(Point{10.0, 0.0}));
    A.observed[m + 1] = std::sqrt(10.0);
    return A;
}

InformationOperator poisson_operator(int k) {
    if (k < 1) throw RangeError("Poisson design needs k >= 1");
    InformationOperator A;
    std::vector<double> obs;
    // Interior Laplacian residuals on a centered k x k grid.
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Point t{(i + 0.5) / k, (j + 0.5) / k};
            A.functionals.push_back(Functional::pde_interior(t, 1.0));
            obs.push_back(0.0);
        }
    // Dirichlet values on the bottom (x = t1) and top (x = 1 - t1) edges.
    for (int i = 1; i <= k + 2; ++i) {
        double t1 = static_cast<double>(i) / (k + 3);
        A.functionals.push_back(Functional::point_eval(Point{t1, 0.0}));
        obs.push_back(t1);
        A.functionals.push_back(Functional::point_eval(Point{t1, 1.0}));
        obs.push_back(1.0 - t1);
    }
    // Zero normal derivative on the side edges.
    for (int i = 1; i <= k; ++i) {
        double t2 = static_cast<double>(i) / (k + 1);
        A.functionals.push_back(
            Functional::neumann_boundary(Point{0.0, t2}, 0, 1.0));
        obs.push_back(0.0);
        A.functionals.push_back(
            Functional::neumann_boundary(Point{1.0, t2}, 0, 1.0));
        obs.push_back(0.0);
    }
    A.observed = Eigen::Map<Eigen::VectorXd>(obs.data(),
                                             static_cast<int>(obs.size()));
    return A;
}

}  // namespace bpnm
