// Normalized Chebyshev bases on affine-mapped domains.
//
// Basis functions are first-kind Chebyshev polynomials, orthonormal with
// respect to the Chebyshev weight 1/sqrt(1-s^2) on the reference interval:
// c_0 = 1/sqrt(pi), c_n = sqrt(2/pi) for n >= 1. Two-dimensional sets are
// tensor products over the total-degree triangle {(j,k): j+k <= N_C},
// ordered by total degree and then lexicographically.
#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "bpnm/errors.hpp"

namespace bpnm {

struct Point {
    double t1 = 0.0;
    double t2 = 0.0;  // ignored for one-dimensional bases
};

// Affine map from the physical domain onto [-1,1] per axis.
struct DomainMap {
    int dimension = 1;
    std::array<double, 2> lower = {-1.0, -1.0};
    std::array<double, 2> upper = {1.0, 1.0};

    static DomainMap interval(double lo, double hi);
    static DomainMap unit_square();

    // s = (2t - lo - hi)/(hi - lo), so s(lo) = -1 and s(hi) = +1 exactly.
    double to_reference(int axis, double t) const {
        return (2.0 * t - lower[axis] - upper[axis]) /
               (upper[axis] - lower[axis]);
    }
    // ds/dt, the chain-rule factor for derivatives.
    double scale(int axis) const {
        return 2.0 / (upper[axis] - lower[axis]);
    }
    bool contains(const Point& p) const;
};

struct BasisIndex {
    int j = 0;
    int k = 0;  // zero for one-dimensional bases
};

class BasisSet {
  public:
    // Degrees 0..max_degree on an interval (max_degree+1 functions).
    static BasisSet line(int max_degree, DomainMap map);
    // Tensor triangle {(j,k): j+k <= total_degree} on a rectangle.
    static BasisSet triangle(int total_degree, DomainMap map);

    int dimension() const { return map_.dimension; }
    int size() const { return static_cast<int>(indices_.size()); }
    const BasisIndex& index(int i) const;
    const DomainMap& domain() const { return map_; }
    int max_degree() const { return max_degree_; }

    // phi_i(t). Evaluation outside the physical domain is the analytic
    // continuation of the polynomial; `outside`, when given, reports it.
    double value(int i, const Point& t, bool* outside = nullptr) const;
    // Mixed partial d^(d1+d2) phi_i / dt1^d1 dt2^d2 with d1 + d2 <= 2.
    double derivative(int i, const Point& t, int d1, int d2 = 0) const;
    double laplacian(int i, const Point& t) const;

    // All basis values (or mixed partials) at a point as a row vector;
    // this is the building block for operator Jacobians.
    Eigen::VectorXd row_values(const Point& t) const;
    Eigen::VectorXd row_derivatives(const Point& t, int d1, int d2 = 0) const;

    // The projection that keeps the first new_size functions.
    BasisSet truncated(int new_size) const;

  private:
    BasisSet() = default;
    void check_index(int i) const;

    DomainMap map_;
    std::vector<BasisIndex> indices_;
    int max_degree_ = 0;
};

// x(t) = x0 + sum_i u_i phi_i(t). Offsets are constants; every use in this
// code base has x0 identically 0 or 1.
struct SeriesState {
    BasisSet basis;
    double x0 = 0.0;
    Eigen::VectorXd u;
};

double eval_series(const SeriesState& x, const Point& t);
double eval_series_deriv(const SeriesState& x, const Point& t, int d1,
                         int d2 = 0);

// P_level: keep coefficients u_0..u_level (and their basis functions),
// drop the rest. level must lie in [0, size-1].
SeriesState project(const SeriesState& x, int level);

}  // namespace bpnm
