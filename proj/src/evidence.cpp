#include "bpnm/evidence.hpp"

#include <cmath>
#include <string>

#include "bpnm/errors.hpp"

namespace bpnm {

double thermodynamic_sum(const std::vector<double>& deltas,
                         const Eigen::VectorXd& mean_r2) {
    if (static_cast<int>(deltas.size()) != mean_r2.size())
        throw RangeError("schedule and moment vector lengths differ");
    double sum = 0.0;
    double inv_prev = 0.0;  // 1/delta_0^2 with delta_0 = infinity
    for (int i = 0; i < mean_r2.size(); ++i) {
        double inv = 1.0 / (deltas[static_cast<std::size_t>(i)] *
                            deltas[static_cast<std::size_t>(i)]);
        sum += (inv - inv_prev) * mean_r2[i];
        inv_prev = inv;
    }
    return -sum;
}

EvidenceEstimate estimate_log_evidence(const SmcHistory& history) {
    if (history.failed)
        throw EvidenceError("evidence unavailable: sampler failed at rung " +
                                std::to_string(history.failure_rung),
                            history.failure_rung);
    int m = static_cast<int>(history.rungs.size());
    EvidenceEstimate e;
    e.n_observations = history.n_observations;
    e.fingerprint = history.fingerprint;
    e.rung_contributions.resize(m);
    e.rung_standard_errors.resize(m);
    double inv_prev = 0.0;
    double var = 0.0;
    for (int i = 0; i < m; ++i) {
        const RungStats& rs = history.rungs[static_cast<std::size_t>(i)];
        if (!std::isfinite(rs.mean_r2))
            throw EvidenceError(
                "evidence unavailable: unusable ensemble at rung " +
                    std::to_string(i),
                i);
        double inv = 1.0 / (rs.delta * rs.delta);
        double increment = 0.5 * (inv - inv_prev);
        e.rung_contributions[i] = increment * rs.mean_r2;
        e.rung_standard_errors[i] = increment * rs.se_r2;
        var += e.rung_standard_errors[i] * e.rung_standard_errors[i];
        inv_prev = inv;
    }
    e.combined_se = std::sqrt(var);
    e.log_relaxed = -e.rung_contributions.sum();
    double delta_m = history.rungs.empty()
                         ? 1.0
                         : history.rungs.back().delta;
    e.log_evidence =
        e.log_relaxed -
        0.5 * e.n_observations * std::log(2.0 * M_PI * delta_m * delta_m);
    return e;
}

double bayes_factor(const EvidenceEstimate& e1, const EvidenceEstimate& e2) {
    if (e1.fingerprint != e2.fingerprint)
        throw ComparisonError(
            "Bayes factor requires estimates against identical information");
    return std::exp(e1.log_evidence - e2.log_evidence);
}

SmcHistory pt_history(const PtResult& result,
                      const TemperatureSchedule& schedule,
                      const InformationOperator& A, int burn_in,
                      int batches) {
    schedule.validate();
    int m = schedule.size();
    if (result.r2_trace.cols() != m)
        throw RangeError("trace width does not match schedule length");
    int total = static_cast<int>(result.r2_trace.rows());
    if (burn_in < 0 || burn_in >= total)
        throw RangeError("burn-in must lie in [0, iterations)");
    int kept = total - burn_in;
    if (batches < 2) throw RangeError("batch means need at least 2 batches");
    batches = std::min(batches, kept);

    SmcHistory h;
    h.n_observations = A.size();
    h.fingerprint = information_fingerprint(A);
    h.rungs.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        RungStats& rs = h.rungs[static_cast<std::size_t>(i)];
        rs.delta = schedule.delta(i);
        rs.acceptance_rate = result.acceptance[i];
        Eigen::VectorXd trace = result.r2_trace.col(i).tail(kept);
        rs.mean_r2 = trace.mean();
        rs.ess = kept;
        // Batch means absorb the chain's autocorrelation into the error bar.
        int per = kept / batches;
        Eigen::VectorXd means(batches);
        for (int b = 0; b < batches; ++b)
            means[b] = trace.segment(b * per, per).mean();
        double centered_ss = (means.array() - means.mean()).square().sum();
        rs.se_r2 =
            std::sqrt(centered_ss / (batches - 1) / batches);
    }
    return h;
}

}  // namespace bpnm
