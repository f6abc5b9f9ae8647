// Information operators: ordered lists of scalar functionals of the unknown
// function, together with observed values, residuals, coefficient-space
// Jacobians, the norm threshold map and hard inequality constraints.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bpnm/chebyshev.hpp"

namespace bpnm {

struct Functional {
    enum class Kind {
        PointEval,            // x(t)
        DerivEval,            // d^(d1+d2) x / dt1^d1 dt2^d2
        OdeResidualPainleve,  // x''(t) - x(t)^2
        PdeInterior,          // -kappa * laplacian(x)(t), constant isotropic kappa
        NeumannBoundary,      // sign * dx/dt_axis
    };

    static Functional point_eval(Point t);
    static Functional deriv_eval(Point t, int d1, int d2 = 0);
    static Functional ode_residual_painleve(double t);
    static Functional pde_interior(Point t, double kappa = 1.0);
    static Functional neumann_boundary(Point t, int axis, double sign);

    bool is_linear() const { return kind != Kind::OdeResidualPainleve; }

    Kind kind = Kind::PointEval;
    Point t;
    int d1 = 0, d2 = 0;  // DerivEval orders
    double kappa = 1.0;  // PdeInterior coefficient
    int axis = 0;        // NeumannBoundary axis
    double sign = 1.0;   // NeumannBoundary orientation
};

struct InformationOperator {
    std::vector<Functional> functionals;
    Eigen::VectorXd observed;
    // Norm cap lambda_max of the threshold map; disabled when absent.
    std::optional<double> threshold;

    int size() const { return static_cast<int>(functionals.size()); }
};

double eval_functional(const Functional& f, const SeriesState& x);

// d eval_functional / d u_j for every coefficient j.
Eigen::VectorXd jacobian_row(const Functional& f, const SeriesState& x);

// A(x) with the threshold map applied: if |A(x)| > lambda_max the whole
// vector is rescaled to norm lambda_max.
Eigen::VectorXd apply_operator(const InformationOperator& A,
                               const SeriesState& x);

// apply_operator(A, x) - a.
Eigen::VectorXd residual(const InformationOperator& A, const SeriesState& x);

// r = |A(x) - a|_2 and its gradient J^T (A(x)-a)/r in coefficient space;
// the gradient at r = 0 is the zero vector. Throws ThresholdGradientError
// when the threshold map's rescaling branch is active at x.
std::pair<double, Eigen::VectorXd> residual_norm_and_grad(
    const InformationOperator& A, const SeriesState& x);

struct InequalityConstraint {
    enum class Direction { LessEqual, GreaterEqual };
    Functional functional;
    Direction direction = Direction::LessEqual;
};

// True iff every constraint holds weakly (boundary values count as satisfied).
bool check_inequalities(const std::vector<InequalityConstraint>& cs,
                        const SeriesState& x);

// Precompiled evaluation against a fixed basis and constant offset: basis
// rows are tabulated once so that samplers evaluate residuals and gradients
// with matrix-vector products only. Produces the same numbers as the
// SeriesState entry points above.
class CompiledOperator {
  public:
    CompiledOperator(const InformationOperator& A, const BasisSet& basis,
                     double x0);

    int n() const { return static_cast<int>(a_.size()); }
    const Eigen::VectorXd& observed() const { return a_; }
    const std::optional<double>& threshold() const { return threshold_; }

    // A(x_u) before the threshold map.
    Eigen::VectorXd raw_values(const Eigen::VectorXd& u) const;
    // |A(x_u) - a| with the threshold map applied.
    double residual_norm(const Eigen::VectorXd& u) const;
    // As residual_norm, also writing d r/d u into grad (threshold inactive).
    double residual_norm_and_grad(const Eigen::VectorXd& u,
                                  Eigen::VectorXd& grad) const;

  private:
    Eigen::MatrixXd j0_;    // u-independent Jacobian part, one row per functional
    Eigen::MatrixXd b_;     // point-evaluation rows of nonlinear functionals
    Eigen::VectorXd c_;     // offset contribution per functional
    Eigen::VectorXd flag_;  // 1 for nonlinear (quadratic) rows, else 0
    Eigen::VectorXd a_;
    std::optional<double> threshold_;
    double x0_;
    bool any_nonlinear_;
};

// Compiled evaluation of inequality constraints (all constraint functionals
// are linear in u for the supported kinds).
class CompiledConstraints {
  public:
    CompiledConstraints(const std::vector<InequalityConstraint>& cs,
                        const BasisSet& basis, double x0);
    bool satisfied(const Eigen::VectorXd& u) const;
    bool empty() const { return rows_.rows() == 0; }

  private:
    Eigen::MatrixXd rows_;
    Eigen::VectorXd c_;
    Eigen::VectorXd sign_;  // +1 encodes value <= 0, -1 encodes value >= 0
};

// The Painleve first-transcendental study operator on [0, 10]:
// m equispaced residual points t_1 = 0, ..., t_m = 10 observing -t_i,
// then x(0) = 0 and x(10) = sqrt(10). n = m + 2.
InformationOperator painleve_operator(int m);

// The mixed boundary-value design on the unit square for -laplacian(x) = 0
// with x = t1 on the bottom edge, x = 1 - t1 on the top edge and
// dx/dt1 = 0 on both side edges. k is the interior grid side: k*k interior
// points at ((i+1/2)/k, (j+1/2)/k), k+2 Dirichlet points per horizontal
// edge at t1 = i/(k+3), and k Neumann points per side edge at t2 = i/(k+1).
// n = k^2 + 2(k+2) + 2k, so k = 2, 3, 4 give n = 16, 25, 36.
InformationOperator poisson_operator(int k);

}  // namespace bpnm
