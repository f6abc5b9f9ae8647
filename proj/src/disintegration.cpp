#include "bpnm/disintegration.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "bpnm/errors.hpp"
#include "bpnm/parallel.hpp"

namespace bpnm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxInitAttempts = 100000;
}  // namespace

TemperatureSchedule TemperatureSchedule::log_uniform(double delta_first,
                                                     double delta_last,
                                                     int m) {
    if (m < 1) throw RangeError("schedule needs at least one temperature");
    if (!(delta_last > 0.0) || !(delta_first > delta_last))
        throw RangeError("schedule needs delta_first > delta_last > 0");
    TemperatureSchedule s;
    s.deltas.resize(static_cast<std::size_t>(m));
    if (m == 1) {
        s.deltas[0] = delta_last;
        return s;
    }
    double l0 = std::log(delta_first);
    double l1 = std::log(delta_last);
    for (int i = 0; i < m; ++i)
        s.deltas[static_cast<std::size_t>(i)] =
            std::exp(l0 + (l1 - l0) * i / (m - 1));
    s.deltas.front() = delta_first;
    s.deltas.back() = delta_last;
    return s;
}

TemperatureSchedule TemperatureSchedule::from_deltas(
    std::vector<double> deltas) {
    TemperatureSchedule s;
    s.deltas = std::move(deltas);
    s.validate();
    return s;
}

double TemperatureSchedule::delta(int rung) const {
    if (rung < 0 || rung >= size())
        throw IndexError("temperature index " + std::to_string(rung) +
                         " outside schedule of length " +
                         std::to_string(size()));
    return deltas[static_cast<std::size_t>(rung)];
}

void TemperatureSchedule::validate() const {
    if (deltas.empty())
        throw RangeError("schedule needs at least one temperature");
    double prev = kInf;
    for (double d : deltas) {
        if (!(d > 0.0) || !(d < prev))
            throw RangeError(
                "schedule bandwidths must be strictly decreasing and > 0");
        prev = d;
    }
}

std::uint64_t information_fingerprint(const InformationOperator& A) {
    std::uint64_t h = 14695981039346656037ull;  // FNV-1a offset basis
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    auto mix_double = [&mix](double x) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(x));
        std::memcpy(&bits, &x, sizeof(bits));
        mix(bits);
    };
    mix(static_cast<std::uint64_t>(A.size()));
    for (const Functional& f : A.functionals) {
        mix(static_cast<std::uint64_t>(f.kind));
        mix_double(f.t.t1);
        mix_double(f.t.t2);
        mix(static_cast<std::uint64_t>(f.d1));
        mix(static_cast<std::uint64_t>(f.d2));
        mix_double(f.kappa);
        mix(static_cast<std::uint64_t>(f.axis));
        mix_double(f.sign);
    }
    for (int i = 0; i < A.observed.size(); ++i) mix_double(A.observed[i]);
    mix(A.threshold.has_value() ? 1 : 0);
    if (A.threshold) mix_double(*A.threshold);
    return h;
}

namespace {

Eigen::VectorXd feasible_prior_draw(const SeriesPrior& prior,
                                    const RelaxedTarget& target,
                                    RngStream& rng, int rung_for_error) {
    for (int attempt = 0; attempt < kMaxInitAttempts; ++attempt) {
        Eigen::VectorXd u = sample_prior(prior, rng);
        if (target.feasible(u)) return u;
    }
    throw SamplerError(
        "could not draw a constraint-satisfying prior initialization",
        rung_for_error);
}

// Multinomial draw via the inverse CDF of the cumulative weights.
int draw_index(const std::vector<double>& cumulative, double u) {
    double point = u * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), point);
    int idx = static_cast<int>(it - cumulative.begin());
    return std::min(idx, static_cast<int>(cumulative.size()) - 1);
}

}  // namespace

SmcResult smc_nd(const SeriesPrior& prior, const InformationOperator& A,
                 const RelaxationKernel& phi,
                 const TemperatureSchedule& schedule, int particles,
                 const MalaConfig& cfg, std::uint64_t seed,
                 const std::vector<InequalityConstraint>& constraints,
                 int workers) {
    if (particles < 2) throw RangeError("SMC needs at least 2 particles");
    schedule.validate();
    cfg.validate();
    const int p = particles;
    const int n_coef = prior.size();
    const int m = schedule.size();
    RelaxedTarget target(prior, A, phi, constraints);

    SmcResult out;
    out.history.n_observations = A.size();
    out.history.fingerprint = information_fingerprint(A);
    out.history.rungs.reserve(static_cast<std::size_t>(m));

    Eigen::MatrixXd states(p, n_coef);
    parallel_for(p, workers, [&](int j) {
        RngStream rng(seed, StreamPurpose::PriorInit, 0,
                      static_cast<std::uint64_t>(j));
        states.row(j) = feasible_prior_draw(prior, target, rng, 0).transpose();
    });

    Eigen::VectorXd r(p);
    std::vector<int> accepted(static_cast<std::size_t>(p));
    Eigen::MatrixXd moved(p, n_coef);

    for (int i = 0; i < m; ++i) {
        double delta = schedule.delta(i);
        double delta_prev = i == 0 ? kInf : schedule.delta(i - 1);

        parallel_for(p, workers, [&](int j) {
            RngStream rng(seed, StreamPurpose::Move,
                          static_cast<std::uint64_t>(i) + 1,
                          static_cast<std::uint64_t>(j));
            MalaResult res =
                mala_kernel(cfg, target, i, delta, states.row(j), rng);
            moved.row(j) = res.state.transpose();
            r[j] = res.residual_norm;
            accepted[static_cast<std::size_t>(j)] = res.accepted;
        });

        RungStats stats;
        stats.delta = delta;
        long total_accepted = 0;
        for (int a : accepted) total_accepted += a;
        stats.acceptance_rate =
            static_cast<double>(total_accepted) /
            (static_cast<double>(p) * cfg.steps_per_kernel);

        RngStream resample_rng(seed, StreamPurpose::Resample,
                               static_cast<std::uint64_t>(i) + 1, 0);

        if (phi.kind == RelaxationKernel::Kind::Indicator) {
            std::vector<int> survivors;
            survivors.reserve(static_cast<std::size_t>(p));
            for (int j = 0; j < p; ++j)
                if (r[j] < delta) survivors.push_back(j);
            if (survivors.empty()) {
                out.history.failed = true;
                out.history.failure_rung = i;
                stats.ess = 0.0;
                stats.mean_r2 = std::numeric_limits<double>::quiet_NaN();
                stats.se_r2 = stats.mean_r2;
                out.history.rungs.push_back(stats);
                out.ensemble.states = moved;
                out.ensemble.weights = Eigen::VectorXd::Zero(p);
                out.ensemble.temperature_index = i;
                out.ensemble.acceptance_rate = stats.acceptance_rate;
                out.ensemble.failed = true;
                return out;
            }
            int ns = static_cast<int>(survivors.size());
            double mean = 0.0;
            for (int j : survivors) mean += r[j] * r[j];
            mean /= ns;
            double var = 0.0;
            for (int j : survivors) {
                double d = r[j] * r[j] - mean;
                var += d * d;
            }
            stats.ess = ns;
            stats.mean_r2 = mean;
            stats.se_r2 = ns > 1 ? std::sqrt(var / (ns - 1) / ns) : 0.0;
            out.history.rungs.push_back(stats);

            states = moved;
            for (int j = 0; j < p; ++j)
                if (r[j] >= delta) {
                    int pick = survivors[static_cast<std::size_t>(
                        resample_rng.below(static_cast<std::uint64_t>(ns)))];
                    states.row(j) = moved.row(pick);
                }
            continue;
        }

        // Squared-exponential re-weighting; log weights are <= 0 and finite
        // unless a residual is infinite.
        Eigen::VectorXd logw(p);
        for (int j = 0; j < p; ++j)
            logw[j] = phi.log_phi(r[j] / delta) -
                      (std::isinf(delta_prev) ? 0.0
                                              : phi.log_phi(r[j] / delta_prev));
        double shift = logw.maxCoeff();
        if (!std::isfinite(shift)) {
            out.history.failed = true;
            out.history.failure_rung = i;
            stats.ess = 0.0;
            stats.mean_r2 = std::numeric_limits<double>::quiet_NaN();
            stats.se_r2 = stats.mean_r2;
            out.history.rungs.push_back(stats);
            out.ensemble.states = moved;
            out.ensemble.weights = Eigen::VectorXd::Zero(p);
            out.ensemble.temperature_index = i;
            out.ensemble.acceptance_rate = stats.acceptance_rate;
            out.ensemble.failed = true;
            return out;
        }
        Eigen::VectorXd w = (logw.array() - shift).exp();
        double total = w.sum();
        w /= total;

        stats.ess = 1.0 / w.array().square().sum();
        Eigen::VectorXd r2 = r.array().square();
        stats.mean_r2 = w.dot(r2);
        stats.se_r2 = std::sqrt(
            (w.array().square() * (r2.array() - stats.mean_r2).square())
                .sum());
        out.history.rungs.push_back(stats);

        std::vector<double> cumulative(static_cast<std::size_t>(p));
        double acc = 0.0;
        for (int j = 0; j < p; ++j) {
            acc += w[j];
            cumulative[static_cast<std::size_t>(j)] = acc;
        }
        for (int j = 0; j < p; ++j) {
            int pick = draw_index(cumulative, resample_rng.uniform());
            states.row(j) = moved.row(pick);
        }
    }

    out.ensemble.states = states;
    out.ensemble.weights = Eigen::VectorXd::Constant(p, 1.0 / p);
    out.ensemble.temperature_index = m - 1;
    out.ensemble.ess = out.history.rungs.back().ess;
    out.ensemble.acceptance_rate = out.history.rungs.back().acceptance_rate;
    return out;
}

PtResult pt_nd(const SeriesPrior& prior, const InformationOperator& A,
               const RelaxationKernel& phi,
               const TemperatureSchedule& schedule, int iterations,
               const MalaConfig& cfg, std::uint64_t seed,
               const std::vector<InequalityConstraint>& constraints,
               int workers) {
    schedule.validate();
    cfg.validate();
    if (iterations < 1) throw RangeError("PT needs at least one iteration");
    const int m = schedule.size();
    const int n_coef = prior.size();
    RelaxedTarget target(prior, A, phi, constraints);

    Eigen::MatrixXd chains(m, n_coef);
    parallel_for(m, workers, [&](int i) {
        RngStream rng(seed, StreamPurpose::PriorInit,
                      static_cast<std::uint64_t>(i) + 1, 0);
        chains.row(i) = feasible_prior_draw(prior, target, rng, i).transpose();
    });

    PtResult out;
    out.cold_trace.resize(iterations, n_coef);
    out.r2_trace.resize(iterations, m);
    out.acceptance = Eigen::VectorXd::Zero(m);
    out.swap_attempts = Eigen::VectorXd::Zero(std::max(0, m - 1));
    out.swap_accepts = Eigen::VectorXd::Zero(std::max(0, m - 1));

    Eigen::VectorXd r(m);
    std::vector<long> accepted(static_cast<std::size_t>(m), 0);

    for (int t = 0; t < iterations; ++t) {
        parallel_for(m, workers, [&](int i) {
            RngStream rng(seed, StreamPurpose::Move,
                          static_cast<std::uint64_t>(i) + 1,
                          static_cast<std::uint64_t>(t));
            MalaResult res = mala_kernel(cfg, target, i, schedule.delta(i),
                                         chains.row(i), rng);
            chains.row(i) = res.state.transpose();
            r[i] = res.residual_norm;
            accepted[static_cast<std::size_t>(i)] += res.accepted;
        });

        if (m >= 2) {
            RngStream swap_rng(seed, StreamPurpose::Swap, 0,
                               static_cast<std::uint64_t>(t));
            int q = static_cast<int>(
                swap_rng.below(static_cast<std::uint64_t>(m - 1)));
            double u = swap_rng.uniform();
            out.swap_attempts[q] += 1.0;
            // Prior terms cancel in the ratio; only the relaxation terms at
            // exchanged residual norms remain.
            double num = phi.log_phi(r[q + 1] / schedule.delta(q)) +
                         phi.log_phi(r[q] / schedule.delta(q + 1));
            double den = phi.log_phi(r[q] / schedule.delta(q)) +
                         phi.log_phi(r[q + 1] / schedule.delta(q + 1));
            bool accept;
            if (std::isinf(den) && den < 0.0)
                accept = !(std::isinf(num) && num < 0.0);
            else
                accept = std::log(u) < num - den;
            if (accept) {
                chains.row(q).swap(chains.row(q + 1));
                std::swap(r[q], r[q + 1]);
                out.swap_accepts[q] += 1.0;
            }
        }

        out.cold_trace.row(t) = chains.row(m - 1);
        out.r2_trace.row(t) = r.array().square().transpose();
    }

    for (int i = 0; i < m; ++i)
        out.acceptance[i] = static_cast<double>(accepted[static_cast<std::size_t>(i)]) /
                            (static_cast<double>(iterations) *
                             cfg.steps_per_kernel);
    return out;
}

}  // namespace bpnm
