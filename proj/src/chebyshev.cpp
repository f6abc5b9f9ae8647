#include "bpnm/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace bpnm {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Normalization constants for the Chebyshev-weighted inner product.
double norm_const(int n) {
    return n == 0 ? 1.0 / std::sqrt(kPi) : std::sqrt(2.0 / kPi);
}

// T_n(s), T_n'(s), T_n''(s) by differentiating the three-term recurrence
// T_{n+1} = 2 s T_n - T_{n-1} twice. Exact for every n, no divisions, so it
// is stable at the endpoints where the U_{n-1} route degenerates.
struct ChebEval {
    double t, d1, d2;
};

ChebEval cheb_eval(int n, double s) {
    if (n == 0) return {1.0, 0.0, 0.0};
    ChebEval prev = {1.0, 0.0, 0.0};
    ChebEval cur = {s, 1.0, 0.0};
    for (int m = 1; m < n; ++m) {
        ChebEval next;
        next.t = 2.0 * s * cur.t - prev.t;
        next.d1 = 2.0 * cur.t + 2.0 * s * cur.d1 - prev.d1;
        next.d2 = 4.0 * cur.d1 + 2.0 * s * cur.d2 - prev.d2;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

DomainMap DomainMap::interval(double lo, double hi) {
    if (!(lo < hi)) throw RangeError("domain interval requires lower < upper");
    DomainMap m;
    m.dimension = 1;
    m.lower[0] = lo;
    m.upper[0] = hi;
    return m;
}

DomainMap DomainMap::unit_square() {
    DomainMap m;
    m.dimension = 2;
    m.lower = {0.0, 0.0};
    m.upper = {1.0, 1.0};
    return m;
}

bool DomainMap::contains(const Point& p) const {
    if (p.t1 < lower[0] || p.t1 > upper[0]) return false;
    if (dimension == 2 && (p.t2 < lower[1] || p.t2 > upper[1])) return false;
    return true;
}

BasisSet BasisSet::line(int max_degree, DomainMap map) {
    if (map.dimension != 1)
        throw RangeError("line basis requires a one-dimensional domain map");
    if (max_degree < 0) throw RangeError("max_degree must be nonnegative");
    BasisSet b;
    b.map_ = map;
    b.max_degree_ = max_degree;
    for (int n = 0; n <= max_degree; ++n) b.indices_.push_back({n, 0});
    return b;
}

BasisSet BasisSet::triangle(int total_degree, DomainMap map) {
    if (map.dimension != 2)
        throw RangeError("triangle basis requires a two-dimensional domain map");
    if (total_degree < 0) throw RangeError("total_degree must be nonnegative");
    BasisSet b;
    b.map_ = map;
    b.max_degree_ = total_degree;
    // Total degree first, then lexicographic in (j,k).
    for (int d = 0; d <= total_degree; ++d)
        for (int j = 0; j <= d; ++j) b.indices_.push_back({j, d - j});
    return b;
}

void BasisSet::check_index(int i) const {
    if (i < 0 || i >= size())
        throw IndexError("basis index " + std::to_string(i) +
                         " out of range [0, " + std::to_string(size()) + ")");
}

const BasisIndex& BasisSet::index(int i) const {
    check_index(i);
    return indices_[static_cast<std::size_t>(i)];
}

double BasisSet::value(int i, const Point& t, bool* outside) const {
    check_index(i);
    if (outside) *outside = !map_.contains(t);
    const BasisIndex& ix = indices_[static_cast<std::size_t>(i)];
    double s1 = map_.to_reference(0, t.t1);
    double v = norm_const(ix.j) * cheb_eval(ix.j, s1).t;
    if (map_.dimension == 2) {
        double s2 = map_.to_reference(1, t.t2);
        v *= norm_const(ix.k) * cheb_eval(ix.k, s2).t;
    }
    return v;
}

double BasisSet::derivative(int i, const Point& t, int d1, int d2) const {
    check_index(i);
    if (d1 < 0 || d2 < 0 || d1 + d2 > 2)
        throw UnsupportedError("derivative order (" + std::to_string(d1) + "," +
                               std::to_string(d2) +
                               ") unsupported; total order must be <= 2");
    if (map_.dimension == 1 && d2 > 0)
        throw UnsupportedError("second-axis derivative of a 1D basis");
    const BasisIndex& ix = indices_[static_cast<std::size_t>(i)];
    double s1 = map_.to_reference(0, t.t1);
    ChebEval e1 = cheb_eval(ix.j, s1);
    double a1 = d1 == 0 ? e1.t
                        : (d1 == 1 ? e1.d1 * map_.scale(0)
                                   : e1.d2 * map_.scale(0) * map_.scale(0));
    double v = norm_const(ix.j) * a1;
    if (map_.dimension == 2) {
        double s2 = map_.to_reference(1, t.t2);
        ChebEval e2 = cheb_eval(ix.k, s2);
        double a2 = d2 == 0 ? e2.t
                            : (d2 == 1 ? e2.d1 * map_.scale(1)
                                       : e2.d2 * map_.scale(1) * map_.scale(1));
        v *= norm_const(ix.k) * a2;
    }
    return v;
}

double BasisSet::laplacian(int i, const Point& t) const {
    double v = derivative(i, t, 2, 0);
    if (map_.dimension == 2) v += derivative(i, t, 0, 2);
    return v;
}

Eigen::VectorXd BasisSet::row_values(const Point& t) const {
    return row_derivatives(t, 0, 0);
}

Eigen::VectorXd BasisSet::row_derivatives(const Point& t, int d1,
                                          int d2) const {
    if (d1 < 0 || d2 < 0 || d1 + d2 > 2)
        throw UnsupportedError("derivative order (" + std::to_string(d1) + "," +
                               std::to_string(d2) +
                               ") unsupported; total order must be <= 2");
    if (map_.dimension == 1 && d2 > 0)
        throw UnsupportedError("second-axis derivative of a 1D basis");
    // Tabulate per-axis values and derivatives once, then gather.
    double s1 = map_.to_reference(0, t.t1);
    std::vector<ChebEval> ax1(static_cast<std::size_t>(max_degree_) + 1);
    for (int n = 0; n <= max_degree_; ++n)
        ax1[static_cast<std::size_t>(n)] = cheb_eval(n, s1);
    std::vector<ChebEval> ax2;
    if (map_.dimension == 2) {
        double s2 = map_.to_reference(1, t.t2);
        ax2.resize(static_cast<std::size_t>(max_degree_) + 1);
        for (int n = 0; n <= max_degree_; ++n)
            ax2[static_cast<std::size_t>(n)] = cheb_eval(n, s2);
    }
    auto pick = [this](const ChebEval& e, int order, int axis) {
        switch (order) {
            case 0: return e.t;
            case 1: return e.d1 * map_.scale(axis);
            default: return e.d2 * map_.scale(axis) * map_.scale(axis);
        }
    };
    Eigen::VectorXd row(size());
    for (int i = 0; i < size(); ++i) {
        const BasisIndex& ix = indices_[static_cast<std::size_t>(i)];
        double v =
            norm_const(ix.j) * pick(ax1[static_cast<std::size_t>(ix.j)], d1, 0);
        if (map_.dimension == 2)
            v *= norm_const(ix.k) *
                 pick(ax2[static_cast<std::size_t>(ix.k)], d2, 1);
        row[i] = v;
    }
    return row;
}

BasisSet BasisSet::truncated(int new_size) const {
    if (new_size < 1 || new_size > size())
        throw RangeError("truncated size out of range");
    BasisSet b;
    b.map_ = map_;
    b.indices_.assign(indices_.begin(), indices_.begin() + new_size);
    b.max_degree_ = 0;
    for (const BasisIndex& ix : b.indices_)
        b.max_degree_ = std::max(b.max_degree_, std::max(ix.j, ix.k));
    return b;
}

double eval_series(const SeriesState& x, const Point& t) {
    double v = x.x0;
    for (int i = 0; i < x.basis.size(); ++i) v += x.u[i] * x.basis.value(i, t);
    return v;
}

double eval_series_deriv(const SeriesState& x, const Point& t, int d1, int d2) {
    // Constant offsets differentiate to zero.
    double v = 0.0;
    for (int i = 0; i < x.basis.size(); ++i)
        v += x.u[i] * x.basis.derivative(i, t, d1, d2);
    return v;
}

SeriesState project(const SeriesState& x, int level) {
    if (level < 0 || level >= x.basis.size())
        throw RangeError("projection level " + std::to_string(level) +
                         " outside [0, " + std::to_string(x.basis.size() - 1) +
                         "]");
    return SeriesState{x.basis.truncated(level + 1), x.x0,
                       x.u.head(level + 1)};
}

}  // namespace bpnm
