// Decision-theoretic diagnostics: the closed-form average quadratic error of
// a linear quadrature rule under the Wiener prior, optimal-information search
// at small n, Monte Carlo Bayes risk for the conjugate quadrature setting,
// and an exact four-state example where classical and probabilistic methods
// rank information operators differently.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bpnm/gaussian_solver.hpp"

namespace bpnm {

// Average of (b(A(x)) - Q(x))^2 over Wiener paths x pinned at x(0) = 0, for
// the linear rule b(a) = sum_i w_i a_i with point information a_i = x(t_i)
// and Q(x) the integral of x over [0, 1]. Closed form:
//   1/3 - 2 sum_i w_i (t_i - t_i^2/2) + sum_ij w_i w_j min(t_i, t_j).
double wce1_risk(const std::vector<double>& knots,
                 const std::vector<double>& weights);

struct TrapeziumRule {
    std::vector<double> knots;    // ascending
    std::vector<double> weights;  // minimizing weights for those knots
    double risk = 0.0;            // wce1_risk at the minimizer
};

// Minimizes wce1_risk over n knots and weights. The objective is quadratic
// in the weights, so each candidate knot set is scored with the exact inner
// solve w = K^{-1} z and the search runs over knots only (multi-start
// pattern search, 20 starts). Throws OptimizationError with the best iterate
// in the message if no start converges; RangeError unless 1 <= n <= 6.
TrapeziumRule optimal_trapezium(int n, std::uint64_t seed = 0);

enum class LossKind { Squared, ZeroOne };

struct RiskReport {
    double bayes_risk = 0.0;
    double standard_error = 0.0;
    LossKind loss = LossKind::Squared;
    std::string method;
};

// Per-draw summary of the posterior B(mu, A(x)).
//   BpnmGaussian: draw-averaged posterior loss, i.e. posterior variance plus
//     the squared error of the posterior mean.
//   BayesRuleMean: squared error of the posterior mean alone.
enum class RiskMethod { BpnmGaussian, BayesRuleMean };

// Monte Carlo Bayes risk under squared loss for quadrature on [0, 1] with
// point information at the given knots (knots may be empty: the posterior is
// then the prior and BayesRuleMean reports the prior variance of Q). Paths
// are simulated as a 1024-interval random walk with the knots inserted into
// the grid; the truth Q(x) is the trapezoid sum of the simulated skeleton.
// Only WienerMin priors are supported. Draws are split across workers by
// seed stream, so the estimate does not depend on the worker count.
RiskReport mc_bayes_risk(const KernelSpec& prior, RiskMethod method,
                         const std::vector<double>& knots, int n_draws,
                         std::uint64_t seed, int workers = 1);

// Monte Carlo analogue of wce1_risk for an arbitrary linear rule: average of
// (sum_i w_i x(t_i) - Q(x))^2 over the same simulated Wiener paths.
RiskReport mc_linear_rule_risk(const std::vector<double>& knots,
                               const std::vector<double>& weights,
                               int n_draws, std::uint64_t seed,
                               int workers = 1);

// Exact rational number, reduced, denominator positive.
struct Fraction {
    long long num = 0;
    long long den = 1;

    double value() const;
    std::string repr() const;  // "1/4", "0", "2"
    bool operator==(const Fraction& other) const;
};

struct ExactRisk {
    std::string method;       // "classical" or "bpnm"
    std::string information;  // readable description of the indicator set S
    Fraction risk;
};

// Four-state example on {spade, diamond, heart, club} with a uniform prior,
// quantity of interest Q(x) = 1[x = spade], information A(x) = 1[x in S] and
// 0-1 loss. Classical risk minimizes over deterministic rules a -> {0, 1};
// the probabilistic method draws Q from the exact posterior and averages the
// loss. Enumeration in rational arithmetic, no sampling. Rows: classical
// then bpnm, each for S = {spade, diamond} and S = {spade, diamond, heart}.
std::vector<ExactRisk> discrete_counterexample();

}  // namespace bpnm
