#include "bpnm/decision.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "bpnm/errors.hpp"
#include "bpnm/parallel.hpp"
#include "bpnm/rng.hpp"

namespace bpnm {

namespace {

void check_unit_interval(const std::vector<double>& knots) {
    for (double t : knots)
        if (!(t >= 0.0) || !(t <= 1.0))
            throw RangeError("knots must lie in [0, 1]");
}

}  // namespace

double wce1_risk(const std::vector<double>& knots,
                 const std::vector<double>& weights) {
    if (knots.size() != weights.size())
        throw RangeError("knots and weights must have equal length");
    check_unit_interval(knots);
    std::size_t n = knots.size();
    double risk = 1.0 / 3.0;
    for (std::size_t i = 0; i < n; ++i)
        risk -= 2.0 * weights[i] * (knots[i] - 0.5 * knots[i] * knots[i]);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            risk += weights[i] * weights[j] * std::min(knots[i], knots[j]);
    return risk;
}

namespace {

// Minimum of wce1_risk over the weights for fixed ascending knots:
//   1/3 - z^T K^{-1} z,  K_ij = min(t_i, t_j),  z_i = t_i - t_i^2/2.
// Returns +inf for knot sets outside the search region (touching 0 or 1,
// or closer together than the guard gap) so the pattern search rejects
// the move instead of factorizing a near-singular Gram matrix.
double knot_objective(std::vector<double> knots,
                      Eigen::VectorXd* weights = nullptr) {
    std::sort(knots.begin(), knots.end());
    int n = static_cast<int>(knots.size());
    double prev = 0.0;
    for (double t : knots) {
        if (t - prev < 1e-3 || t > 1.0 - 1e-4)
            return std::numeric_limits<double>::infinity();
        prev = t;
    }
    Eigen::MatrixXd k(n, n);
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) {
        z[i] = knots[i] - 0.5 * knots[i] * knots[i];
        for (int j = 0; j < n; ++j) k(i, j) = std::min(knots[i], knots[j]);
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(k);
    Eigen::VectorXd w = ldlt.solve(z);
    if (weights) *weights = w;
    return 1.0 / 3.0 - z.dot(w);
}

struct KnotSearch {
    std::vector<double> knots;
    double risk = std::numeric_limits<double>::infinity();
    bool converged = false;
};

// Coordinate pattern search with halving steps. The objective is smooth and
// strongly convex near the optimum, so stalling at step h leaves the iterate
// within a small multiple of h of the minimizer.
KnotSearch pattern_search(std::vector<double> start) {
    KnotSearch state;
    state.knots = std::move(start);
    state.risk = knot_objective(state.knots);
    int n = static_cast<int>(state.knots.size());
    double h = 0.25 / (n + 1);
    int evals = 0;
    const int max_evals = 200000;
    while (h > 1e-11 && evals < max_evals) {
        bool improved = false;
        for (int i = 0; i < n; ++i) {
            for (double step : {h, -h}) {
                std::vector<double> cand = state.knots;
                cand[i] += step;
                double value = knot_objective(cand);
                ++evals;
                if (value < state.risk) {
                    state.risk = value;
                    state.knots = std::move(cand);
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    state.converged = h <= 1e-11;
    return state;
}

}  // namespace

TrapeziumRule optimal_trapezium(int n, std::uint64_t seed) {
    if (n < 1 || n > 6)
        throw RangeError("optimal_trapezium supports 1 <= n <= 6 knots");
    RngStream rng(seed, StreamPurpose::Generic);
    const int starts = 20;
    KnotSearch best;
    bool any_converged = false;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> start(n);
        double jitter = s == 0 ? 0.0 : 0.4 / (n + 1);
        for (int i = 0; i < n; ++i) {
            start[i] = static_cast<double>(i + 1) / (n + 1) +
                       jitter * rng.uniform(-1.0, 1.0);
            start[i] = std::clamp(start[i], 0.01, 0.99);
        }
        std::sort(start.begin(), start.end());
        KnotSearch result = pattern_search(std::move(start));
        any_converged = any_converged || result.converged;
        if (result.risk < best.risk) best = std::move(result);
    }
    std::sort(best.knots.begin(), best.knots.end());
    if (!any_converged) {
        std::ostringstream msg;
        msg << "optimal_trapezium did not converge; best iterate knots = [";
        for (int i = 0; i < n; ++i)
            msg << (i ? ", " : "") << best.knots[i];
        msg << "], risk = " << best.risk;
        throw OptimizationError(msg.str());
    }
    Eigen::VectorXd w;
    TrapeziumRule rule;
    rule.risk = knot_objective(best.knots, &w);
    rule.knots = std::move(best.knots);
    rule.weights.assign(w.data(), w.data() + n);
    return rule;
}

namespace {

// Uniform 1024-interval grid on [0, 1] with the knots spliced in. Each knot
// records the index of its grid point so simulated paths can be read off at
// the observation sites exactly.
struct PathGrid {
    std::vector<double> time;
    std::vector<int> knot_index;  // one entry per requested knot
};

PathGrid build_grid(const std::vector<double>& knots) {
    const int resolution = 1024;
    std::vector<double> time;
    time.reserve(static_cast<std::size_t>(resolution) + 1 + knots.size());
    for (int j = 0; j <= resolution; ++j)
        time.push_back(static_cast<double>(j) / resolution);
    time.insert(time.end(), knots.begin(), knots.end());
    std::sort(time.begin(), time.end());
    time.erase(std::unique(time.begin(), time.end(),
                           [](double a, double b) { return b - a < 1e-12; }),
               time.end());
    PathGrid grid;
    grid.knot_index.reserve(knots.size());
    for (double t : knots) {
        auto it = std::lower_bound(time.begin(), time.end(), t - 1e-12);
        grid.knot_index.push_back(static_cast<int>(it - time.begin()));
    }
    grid.time = std::move(time);
    return grid;
}

// Simulates one Wiener path skeleton (plus the constant mean) on the grid,
// returning the trapezoid estimate of its integral over [0, 1] and the path
// values at the knots.
double simulate_path(const PathGrid& grid, double mean, RngStream& rng,
                     Eigen::VectorXd* at_knots) {
    int m = static_cast<int>(grid.time.size());
    std::vector<double> path(static_cast<std::size_t>(m));
    path[0] = mean;
    double integral = 0.0;
    for (int j = 1; j < m; ++j) {
        double dt = grid.time[static_cast<std::size_t>(j)] -
                    grid.time[static_cast<std::size_t>(j - 1)];
        path[static_cast<std::size_t>(j)] =
            path[static_cast<std::size_t>(j - 1)] +
            std::sqrt(dt) * rng.normal();
        integral += 0.5 * dt * (path[static_cast<std::size_t>(j - 1)] +
                                path[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < at_knots->size(); ++i)
        (*at_knots)[i] =
            path[static_cast<std::size_t>(grid.knot_index[static_cast<std::size_t>(i)])];
    return integral;
}

// Shared Monte Carlo driver: draws paths by seed stream, applies the
// per-draw loss and reduces to mean and standard error after the join.
RiskReport run_path_mc(
    const std::string& method, const std::vector<double>& knots, int n_draws,
    std::uint64_t seed, int workers, double mean,
    const std::function<double(const Eigen::VectorXd&, double)>& loss) {
    if (n_draws < 2) throw RangeError("mc risk needs at least two draws");
    PathGrid grid = build_grid(knots);
    int n = static_cast<int>(knots.size());
    std::vector<double> losses(static_cast<std::size_t>(n_draws));
    parallel_for(n_draws, workers, [&](int draw) {
        RngStream rng(seed, StreamPurpose::RiskDraw, 0,
                      static_cast<std::uint64_t>(draw));
        Eigen::VectorXd a(n);
        double q = simulate_path(grid, mean, rng, &a);
        losses[static_cast<std::size_t>(draw)] = loss(a, q);
    });
    double avg = 0.0;
    for (double l : losses) avg += l;
    avg /= n_draws;
    double var = 0.0;
    for (double l : losses) var += (l - avg) * (l - avg);
    var /= static_cast<double>(n_draws) * (n_draws - 1);
    RiskReport report;
    report.bayes_risk = avg;
    report.standard_error = std::sqrt(var);
    report.loss = LossKind::Squared;
    report.method = method;
    return report;
}

}  // namespace

RiskReport mc_bayes_risk(const KernelSpec& prior, RiskMethod method,
                         const std::vector<double>& knots, int n_draws,
                         std::uint64_t seed, int workers) {
    if (prior.kind != KernelSpec::Kind::WienerMin)
        throw UnsupportedError(
            "mc_bayes_risk simulates paths for WienerMin priors only");
    check_unit_interval(knots);
    int n = static_cast<int>(knots.size());
    Eigen::VectorXd w =
        n > 0 ? bq_weights(prior, knots) : Eigen::VectorXd(0);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
    GaussianPosterior reference = bq_posterior(prior, knots, zero);
    double post_var = reference.scalar_variance();
    double mean = prior.mean;
    bool include_variance = method == RiskMethod::BpnmGaussian;
    auto loss = [&, include_variance, post_var, mean](
                    const Eigen::VectorXd& a, double q) {
        double post_mean = mean + w.dot(a - Eigen::VectorXd::Constant(
                                                a.size(), mean));
        double err = post_mean - q;
        return err * err + (include_variance ? post_var : 0.0);
    };
    const char* name =
        include_variance ? "BPNM-Gaussian" : "BayesRule-mean";
    return run_path_mc(name, knots, n_draws, seed, workers, mean, loss);
}

RiskReport mc_linear_rule_risk(const std::vector<double>& knots,
                               const std::vector<double>& weights,
                               int n_draws, std::uint64_t seed, int workers) {
    if (knots.size() != weights.size())
        throw RangeError("knots and weights must have equal length");
    check_unit_interval(knots);
    Eigen::Map<const Eigen::VectorXd> w(weights.data(),
                                        static_cast<int>(weights.size()));
    auto loss = [&w](const Eigen::VectorXd& a, double q) {
        double err = w.dot(a) - q;
        return err * err;
    };
    return run_path_mc("linear-rule", knots, n_draws, seed, workers, 0.0,
                       loss);
}

namespace {

Fraction make_fraction(long long num, long long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Fraction{num, den};
}

Fraction add(const Fraction& a, const Fraction& b) {
    return make_fraction(a.num * b.den + b.num * a.den, a.den * b.den);
}

}  // namespace

double Fraction::value() const {
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string Fraction::repr() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool Fraction::operator==(const Fraction& other) const {
    return num * other.den == other.num * den;
}

namespace {

// States are spade, diamond, heart, club; the quantity of interest is the
// indicator of spade and the prior is uniform.
constexpr int kStates = 4;

int quantity(int x) { return x == 0 ? 1 : 0; }

// Best deterministic rule {0,1} -> {0,1} applied to the set indicator.
Fraction classical_risk(const std::array<bool, kStates>& in_set) {
    int best = kStates + 1;
    for (int c0 = 0; c0 <= 1; ++c0) {
        for (int c1 = 0; c1 <= 1; ++c1) {
            int errors = 0;
            for (int x = 0; x < kStates; ++x) {
                int decision = in_set[static_cast<std::size_t>(x)] ? c1 : c0;
                if (decision != quantity(x)) ++errors;
            }
            best = std::min(best, errors);
        }
    }
    return make_fraction(best, kStates);
}

// Expected 0-1 loss of a posterior draw: the posterior given A(x) is uniform
// on the states with the same indicator value, so the per-state loss is the
// fraction of that cell whose quantity disagrees with the truth.
Fraction probabilistic_risk(const std::array<bool, kStates>& in_set) {
    Fraction total{0, 1};
    for (int x = 0; x < kStates; ++x) {
        int cell = 0;
        int mismatched = 0;
        for (int y = 0; y < kStates; ++y) {
            if (in_set[static_cast<std::size_t>(y)] !=
                in_set[static_cast<std::size_t>(x)])
                continue;
            ++cell;
            if (quantity(y) != quantity(x)) ++mismatched;
        }
        total = add(total, make_fraction(mismatched, kStates * cell));
    }
    return total;
}

}  // namespace

std::vector<ExactRisk> discrete_counterexample() {
    const std::array<bool, kStates> two = {true, true, false, false};
    const std::array<bool, kStates> three = {true, true, true, false};
    const std::string two_name = "S = {spade, diamond}";
    const std::string three_name = "S = {spade, diamond, heart}";
    return {
        {"classical", two_name, classical_risk(two)},
        {"classical", three_name, classical_risk(three)},
        {"bpnm", two_name, probabilistic_risk(two)},
        {"bpnm", three_name, probabilistic_risk(three)},
    };
}

}  // namespace bpnm
