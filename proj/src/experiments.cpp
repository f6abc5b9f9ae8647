#include "bpnm/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <vector>

#include <Eigen/Dense>

#include "bpnm/decision.hpp"
#include "bpnm/disintegration.hpp"
#include "bpnm/errors.hpp"
#include "bpnm/evidence.hpp"
#include "bpnm/gaussian_solver.hpp"
#include "bpnm/output.hpp"
#include "bpnm/pipeline.hpp"
#include "bpnm/series_prior.hpp"

namespace bpnm {

namespace {

using nlohmann::json;

namespace fs = std::filesystem;

class WallClock {
  public:
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

std::string joined(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

CoefficientFamily family_from(const std::string& name) {
    if (name == "gaussian") return CoefficientFamily::Gaussian;
    if (name == "cauchy") return CoefficientFamily::Cauchy;
    if (name == "uniform") return CoefficientFamily::Uniform;
    throw ConfigError("prior.family must be gaussian, cauchy or uniform");
}

SeriesPrior build_prior(const ExperimentConfig& cfg, BasisSet basis) {
    ScaleSequence scales =
        cfg.prior.scale.kind == "geometric"
            ? ScaleSequence::geometric(cfg.prior.scale.alpha,
                                       cfg.prior.scale.exponent)
            : ScaleSequence::power_decay(cfg.prior.scale.alpha,
                                         cfg.prior.scale.exponent);
    return SeriesPrior(family_from(cfg.prior.family), scales, cfg.prior.x0,
                       std::move(basis));
}

TemperatureSchedule build_schedule(const ExperimentConfig& cfg) {
    return TemperatureSchedule::log_uniform(cfg.sampler.schedule.first,
                                            cfg.sampler.schedule.last,
                                            cfg.sampler.schedule.count);
}

RelaxationKernel build_relaxation(const ExperimentConfig& cfg) {
    return cfg.sampler.relaxation == "indicator"
               ? RelaxationKernel::indicator()
               : RelaxationKernel::squared_exponential();
}

MalaConfig build_mala(const ExperimentConfig& cfg,
                      const TemperatureSchedule& schedule) {
    MalaConfig mala;
    mala.tau0 = cfg.sampler.tau0;
    mala.steps_per_kernel = cfg.sampler.steps;
    if (cfg.sampler.step_cap > 0.0) {
        // The indicator target has no residual gradient, so proposals must
        // stay on the bandwidth scale at every rung; the smooth relaxation
        // only needs that once delta drops below one.
        bool indicator = cfg.sampler.relaxation == "indicator";
        mala.step_sizes.reserve(static_cast<std::size_t>(schedule.size()));
        for (double delta : schedule.deltas) {
            double law = indicator ? delta * delta : std::min(1.0, delta * delta);
            mala.step_sizes.push_back(
                std::min(cfg.sampler.step_cap, cfg.sampler.tau0 * law));
        }
    }
    return mala;
}

json base_summary(const ExperimentConfig& cfg, int workers) {
    json summary;
    summary["experiment"] = experiment_name(cfg.experiment);
    summary["seed"] = cfg.sampler.seed;
    summary["workers"] = workers;
    summary["config"] = json::parse(config_to_json_string(cfg));
    return summary;
}

json rung_table(const SmcHistory& history) {
    json rungs = json::array();
    for (const RungStats& r : history.rungs)
        rungs.push_back({{"delta", r.delta},
                         {"ess", r.ess},
                         {"acceptance_rate", r.acceptance_rate},
                         {"mean_r2", r.mean_r2},
                         {"se_r2", r.se_r2}});
    return rungs;
}

json evidence_block(const EvidenceEstimate& estimate) {
    return {{"log_evidence", estimate.log_evidence},
            {"standard_error", estimate.combined_se},
            {"log_relaxed_normalizer", estimate.log_relaxed},
            {"n_observations", estimate.n_observations}};
}

// Weighted ensemble mean and standard deviation of x(t) over grid points.
void ensemble_grid(const BasisSet& basis, double x0,
                   const Eigen::MatrixXd& states,
                   const Eigen::VectorXd& weights,
                   const std::vector<Point>& points, Eigen::VectorXd* mean,
                   Eigen::VectorXd* sd) {
    int g = static_cast<int>(points.size());
    mean->resize(g);
    sd->resize(g);
    for (int j = 0; j < g; ++j) {
        Eigen::VectorXd row = basis.row_values(points[j]);
        Eigen::VectorXd values =
            ((states * row).array() + x0).matrix();  // one value per particle
        double m = weights.dot(values);
        double var = weights.dot(
            (values.array() - m).square().matrix());
        (*mean)[j] = m;
        (*sd)[j] = std::sqrt(std::max(0.0, var));
    }
}

// Shared sampler orchestration for the three posterior experiments: runs the
// configured algorithm, fills ensemble/weights with coefficient samples and
// returns the per-rung history used for diagnostics and evidence.
SmcHistory run_sampler(const ExperimentConfig& cfg, const SeriesPrior& prior,
                       const InformationOperator& A,
                       const std::vector<InequalityConstraint>& constraints,
                       const MalaConfig& mala,
                       const TemperatureSchedule& schedule, int workers,
                       Eigen::MatrixXd* ensemble, Eigen::VectorXd* weights,
                       json* summary) {
    RelaxationKernel phi = build_relaxation(cfg);
    if (cfg.sampler.algorithm == "smc") {
        SmcResult result =
            smc_nd(prior, A, phi, schedule, cfg.sampler.particles, mala,
                   cfg.sampler.seed, constraints, workers);
        if (result.history.failed)
            throw SamplerError("ensemble died at schedule rung " +
                                   std::to_string(result.history.failure_rung),
                               result.history.failure_rung);
        *ensemble = result.ensemble.states;
        *weights = result.ensemble.weights;
        json ess = json::array();
        for (const RungStats& r : result.history.rungs) ess.push_back(r.ess);
        (*summary)["ess_history"] = ess;
        (*summary)["final_ess"] = result.ensemble.ess;
        return result.history;
    }
    PtResult result = pt_nd(prior, A, phi, schedule, cfg.sampler.iterations,
                            mala, cfg.sampler.seed, constraints, workers);
    int kept = cfg.sampler.iterations - cfg.sampler.burn_in;
    int stride = std::max(1, kept / 2000);
    std::vector<int> rows;
    for (int i = cfg.sampler.burn_in; i < cfg.sampler.iterations; i += stride)
        rows.push_back(i);
    ensemble->resize(static_cast<int>(rows.size()), result.cold_trace.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        ensemble->row(static_cast<int>(i)) = result.cold_trace.row(rows[i]);
    *weights = Eigen::VectorXd::Constant(
        ensemble->rows(), 1.0 / static_cast<double>(ensemble->rows()));
    json chains = json::array();
    for (int q = 0; q < result.acceptance.size(); ++q)
        chains.push_back(result.acceptance[q]);
    (*summary)["chain_acceptance"] = chains;
    json swaps = json::array();
    for (int q = 0; q < result.swap_accepts.size(); ++q)
        swaps.push_back(result.swap_attempts[q] > 0
                            ? result.swap_accepts[q] / result.swap_attempts[q]
                            : 0.0);
    (*summary)["swap_acceptance"] = swaps;
    (*summary)["thinning_stride"] = stride;
    return pt_history(result, schedule, A, cfg.sampler.burn_in);
}

void attach_history(const ExperimentConfig& cfg, const SmcHistory& history,
                    json* summary) {
    (*summary)["rungs"] = rung_table(history);
    json acc = json::array();
    for (const RungStats& r : history.rungs)
        acc.push_back(r.acceptance_rate);
    (*summary)["acceptance"] = acc;
    if (build_relaxation(cfg).positive())
        (*summary)["evidence"] = evidence_block(estimate_log_evidence(history));
}

std::vector<double> observation_sites(const InformationConfig& info) {
    std::vector<double> sites(static_cast<std::size_t>(info.n));
    for (int i = 0; i < info.n; ++i)
        sites[static_cast<std::size_t>(i)] =
            info.layout == "equispaced"
                ? static_cast<double>(i + 1) / (info.n + 1)
                : (i + 0.5) / info.n;
    return sites;
}

}  // namespace

json run_quadrature(const ExperimentConfig& cfg, const std::string& out_dir,
                    int workers) {
    WallClock clock;
    BasisSet basis =
        BasisSet::line(cfg.prior.degree, DomainMap::interval(0.0, 1.0));
    SeriesPrior prior = build_prior(cfg, basis);
    std::vector<double> sites = observation_sites(cfg.information);
    InformationOperator A;
    for (double t : sites)
        A.functionals.push_back(Functional::point_eval({t, 0.0}));
    A.observed = Eigen::Map<const Eigen::VectorXd>(
        cfg.information.observed.data(),
        static_cast<int>(cfg.information.observed.size()));

    TemperatureSchedule schedule = build_schedule(cfg);
    MalaConfig mala = build_mala(cfg, schedule);
    json summary = base_summary(cfg, workers);
    Eigen::MatrixXd ensemble;
    Eigen::VectorXd weights;
    SmcHistory history = run_sampler(cfg, prior, A, {}, mala, schedule,
                                     workers, &ensemble, &weights, &summary);
    attach_history(cfg, history, &summary);
    if (prior.family() == CoefficientFamily::Gaussian)
        summary["closed_form_log_evidence"] =
            gaussian_evidence(KernelSpec::series_induced(prior), A);

    std::vector<Point> grid;
    for (int j = 0; j <= 100; ++j) grid.push_back({j / 100.0, 0.0});
    Eigen::VectorXd mean, sd;
    ensemble_grid(prior.basis(), prior.x0(), ensemble, weights, grid, &mean,
                  &sd);
    Eigen::MatrixXd points(static_cast<int>(grid.size()), 1);
    for (std::size_t j = 0; j < grid.size(); ++j)
        points(static_cast<int>(j), 0) = grid[j].t1;

    write_samples_csv(joined(out_dir, cfg.output.samples), ensemble);
    write_grid_csv(joined(out_dir, cfg.output.grid), points, mean, sd);
    summary["wall_time_seconds"] = clock.seconds();
    write_json_file(joined(out_dir, cfg.output.summary), summary);
    return summary;
}

json run_poisson(const ExperimentConfig& cfg, const std::string& out_dir,
                 int workers) {
    WallClock clock;
    int k = cfg.information.n == 16 ? 2 : cfg.information.n == 25 ? 3 : 4;
    BasisSet basis =
        BasisSet::triangle(cfg.prior.degree, DomainMap::unit_square());
    SeriesPrior prior = build_prior(cfg, basis);
    InformationOperator A = poisson_operator(k);

    TemperatureSchedule schedule = build_schedule(cfg);
    MalaConfig mala = build_mala(cfg, schedule);
    // The design is linear, so its Jacobian is a constant matrix. A Jacobi
    // preconditioner matching the posterior curvature at the final bandwidth
    // lets one uniform step size serve both the data-pinned directions and
    // the prior-dominated ones; the latter would freeze under prior-scale
    // preconditioning once delta is small.
    Eigen::MatrixXd jac(A.size(), prior.size());
    SeriesState zero{prior.basis(), prior.x0(),
                     Eigen::VectorXd::Zero(prior.size())};
    Eigen::VectorXd base = residual(A, zero);
    for (int j = 0; j < prior.size(); ++j) {
        SeriesState unit{prior.basis(), prior.x0(),
                         Eigen::VectorXd::Unit(prior.size(), j)};
        jac.col(j) = residual(A, unit) - base;
    }
    double delta_m = schedule.deltas.back();
    mala.preconditioner =
        (prior.gammas().array().square().inverse() +
         jac.colwise().squaredNorm().transpose().array() /
             (delta_m * delta_m))
            .inverse();
    double flat_step = cfg.sampler.step_cap > 0.0
                           ? std::min(cfg.sampler.step_cap, cfg.sampler.tau0)
                           : cfg.sampler.tau0;
    mala.step_sizes.assign(static_cast<std::size_t>(schedule.size()),
                           flat_step);
    json summary = base_summary(cfg, workers);
    summary["interior_grid_side"] = k;
    Eigen::MatrixXd ensemble;
    Eigen::VectorXd weights;
    SmcHistory history = run_sampler(cfg, prior, A, {}, mala, schedule,
                                     workers, &ensemble, &weights, &summary);
    attach_history(cfg, history, &summary);

    std::vector<Point> grid;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j)
            grid.push_back({i / 20.0, j / 20.0});
    Eigen::VectorXd mean, sd;
    ensemble_grid(prior.basis(), prior.x0(), ensemble, weights, grid, &mean,
                  &sd);
    Eigen::MatrixXd points(static_cast<int>(grid.size()), 2);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        points(static_cast<int>(j), 0) = grid[j].t1;
        points(static_cast<int>(j), 1) = grid[j].t2;
    }

    write_samples_csv(joined(out_dir, cfg.output.samples), ensemble);
    write_grid_csv(joined(out_dir, cfg.output.grid), points, mean, sd);
    summary["wall_time_seconds"] = clock.seconds();
    write_json_file(joined(out_dir, cfg.output.summary), summary);
    return summary;
}

json run_painleve(const ExperimentConfig& cfg, const std::string& out_dir,
                  int workers) {
    WallClock clock;
    BasisSet basis =
        BasisSet::line(cfg.prior.degree, DomainMap::interval(0.0, 10.0));
    SeriesPrior prior = build_prior(cfg, basis);
    InformationOperator A = painleve_operator(cfg.information.n - 2);
    std::vector<InequalityConstraint> constraints;
    if (cfg.information.negative_initial_slope)
        constraints.push_back(
            {Functional::deriv_eval({0.0, 0.0}, 1),
             InequalityConstraint::Direction::LessEqual});

    TemperatureSchedule schedule = build_schedule(cfg);
    MalaConfig mala = build_mala(cfg, schedule);
    // The geometric scales span seven orders of magnitude, so precondition
    // with the prior variances rather than the scales; with diag(gamma^2)
    // every prior-dominated direction equilibrates at the same step size.
    mala.preconditioner = prior.gammas().array().square();
    json summary = base_summary(cfg, workers);
    Eigen::MatrixXd ensemble;
    Eigen::VectorXd weights;
    SmcHistory history =
        run_sampler(cfg, prior, A, constraints, mala, schedule, workers,
                    &ensemble, &weights, &summary);
    attach_history(cfg, history, &summary);

    double delta_m = schedule.deltas.back();
    CompiledOperator compiled(A, prior.basis(), prior.x0());
    double within = 0.0;
    Eigen::VectorXd residuals(ensemble.rows());
    for (int p = 0; p < ensemble.rows(); ++p) {
        residuals[p] = compiled.residual_norm(ensemble.row(p).transpose());
        if (residuals[p] <= 3.0 * delta_m) within += weights[p];
    }
    summary["final_delta"] = delta_m;
    summary["residual_within_3delta"] = within;
    summary["max_residual"] = residuals.maxCoeff();

    std::vector<Point> grid;
    for (int j = 0; j <= 200; ++j) grid.push_back({j * 0.05, 0.0});
    Eigen::VectorXd mean, sd;
    ensemble_grid(prior.basis(), prior.x0(), ensemble, weights, grid, &mean,
                  &sd);
    Eigen::MatrixXd points(static_cast<int>(grid.size()), 1);
    for (std::size_t j = 0; j < grid.size(); ++j)
        points(static_cast<int>(j), 0) = grid[j].t1;

    write_samples_csv(joined(out_dir, cfg.output.samples), ensemble);
    write_grid_csv(joined(out_dir, cfg.output.grid), points, mean, sd);
    summary["wall_time_seconds"] = clock.seconds();
    write_json_file(joined(out_dir, cfg.output.summary), summary);
    return summary;
}

json run_pipeline_demo(const ExperimentConfig& cfg,
                       const std::string& out_dir, int workers) {
    WallClock clock;
    KernelSpec kernel = cfg.information.kernel == "integrated-wiener"
                            ? KernelSpec::integrated_wiener()
                            : KernelSpec::wiener_min();
    int m = cfg.information.n;
    auto data = [](double t) { return std::sin(3.141592653589793 * t); };
    DistributedIntegrationDemo demo =
        distributed_integration_demo(kernel, m, data);

    json summary = base_summary(cfg, workers);
    ValidationReport validation =
        check_compatibility(demo.graph, demo.methods);
    summary["compatibility"] = {{"violations", validation.violations},
                                {"warnings", validation.warnings}};

    DependenceGraph graph = dependence_graph(demo.graph);
    json edges = json::array();
    for (const auto& [from, to] : graph.edges)
        edges.push_back(std::to_string(from) + "->" + std::to_string(to));
    summary["dependence_edges"] = edges;

    // No asserted statements: every conditional-independence requirement is
    // checked against the joint Gaussian witness of the chosen kernel.
    CoherenceDeclaration declaration;
    declaration.dimensions = demo.dimensions;
    declaration.witness = demo.witness;
    CoherenceReport coherence = check_coherence(graph, declaration);
    summary["coherence"] = {
        {"status", coherence.coherent()
                       ? "coherent"
                       : coherence.status == CoherenceStatus::Incoherent
                             ? "incoherent"
                             : "undeclared"},
        {"incoherent", coherence.incoherent},
        {"undeclared", coherence.undeclared}};

    PipelineResult analytic = execute(demo.graph, demo.methods, demo.sources,
                                      ExecutionMode::AnalyticGaussian);
    GaussianPosterior joint = bq_posterior(kernel, demo.all_knots,
                                           demo.all_values, {0.0, 1.0});
    summary["analytic"] = {{"mean", analytic.terminal.scalar_mean()},
                           {"variance", analytic.terminal.scalar_variance()}};
    summary["joint_reference"] = {{"mean", joint.scalar_mean()},
                                  {"variance", joint.scalar_variance()}};
    summary["deviation"] = {
        {"mean", std::abs(analytic.terminal.scalar_mean() -
                          joint.scalar_mean())},
        {"variance", std::abs(analytic.terminal.scalar_variance() -
                              joint.scalar_variance())}};

    Eigen::MatrixXd samples(0, 1);
    if (cfg.sampler.particles > 0) {
        PipelineResult ancestral =
            execute(demo.graph, demo.methods, demo.sources,
                    ExecutionMode::Ancestral, cfg.sampler.seed,
                    cfg.sampler.particles, workers);
        samples = ancestral.samples;
        double mean = samples.col(0).mean();
        double var =
            (samples.col(0).array() - mean).square().sum() /
            std::max(1, static_cast<int>(samples.rows()) - 1);
        summary["ancestral"] = {
            {"paths", static_cast<int>(samples.rows())},
            {"mean", mean},
            {"standard_error",
             std::sqrt(var / static_cast<double>(samples.rows()))}};
    }

    // Function-space view given all point observations, for the grid file.
    int knots = static_cast<int>(demo.all_knots.size());
    Eigen::MatrixXd gram(knots, knots);
    for (int i = 0; i < knots; ++i)
        for (int j = 0; j < knots; ++j)
            gram(i, j) =
                kernel_value(kernel, demo.all_knots[static_cast<std::size_t>(
                                         i)],
                             demo.all_knots[static_cast<std::size_t>(j)]);
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw ConditioningError("pipeline demo knot Gram factorization failed",
                                0.0);
    Eigen::VectorXd centered =
        (demo.all_values.array() - kernel.mean).matrix();
    Eigen::VectorXd alpha = llt.solve(centered);
    int g = 101;
    Eigen::MatrixXd points(g, 1);
    Eigen::VectorXd mean(g), sd(g);
    for (int j = 0; j < g; ++j) {
        double t = j / 100.0;
        points(j, 0) = t;
        Eigen::VectorXd cross(knots);
        for (int i = 0; i < knots; ++i)
            cross[i] = kernel_value(
                kernel, t, demo.all_knots[static_cast<std::size_t>(i)]);
        mean[j] = kernel.mean + cross.dot(alpha);
        double var = kernel_value(kernel, t, t) - cross.dot(llt.solve(cross));
        sd[j] = std::sqrt(std::max(0.0, var));
    }

    write_samples_csv(joined(out_dir, cfg.output.samples), samples);
    write_grid_csv(joined(out_dir, cfg.output.grid), points, mean, sd);
    summary["wall_time_seconds"] = clock.seconds();
    write_json_file(joined(out_dir, cfg.output.summary), summary);
    return summary;
}

json run_risk(const ExperimentConfig& cfg, const std::string& out_dir,
              int workers) {
    WallClock clock;
    json summary = base_summary(cfg, workers);
    int n = cfg.information.n;
    int draws = cfg.sampler.particles;
    std::uint64_t seed = cfg.sampler.seed;

    // Long-format table of the optimal rules at small sizes.
    std::vector<std::vector<std::string>> table;
    for (int size = 1; size <= 4; ++size) {
        TrapeziumRule rule = optimal_trapezium(size, seed);
        for (int i = 0; i < size; ++i)
            table.push_back({std::to_string(size), std::to_string(i),
                             format_double(rule.knots[static_cast<std::size_t>(i)]),
                             format_double(rule.weights[static_cast<std::size_t>(i)]),
                             format_double(rule.risk)});
    }
    write_table_csv(joined(out_dir, cfg.output.grid),
                    {"rule_size", "knot_index", "knot", "weight", "risk"},
                    table);

    std::vector<double> knots;
    std::vector<double> rule_weights;
    if (n > 0) {
        TrapeziumRule rule = optimal_trapezium(n, seed);
        knots = rule.knots;
        rule_weights = rule.weights;
        summary["closed_form_risk"] =
            1.0 / (3.0 * (2 * n + 1) * (2 * n + 1));
        summary["wce1_risk"] = wce1_risk(knots, rule_weights);
    } else {
        summary["closed_form_risk"] = 1.0 / 3.0;  // prior variance of Q
    }
    RiskReport bpnm_report =
        mc_bayes_risk(KernelSpec::wiener_min(), RiskMethod::BpnmGaussian,
                      knots, draws, seed, workers);
    RiskReport bayes_report =
        mc_bayes_risk(KernelSpec::wiener_min(), RiskMethod::BayesRuleMean,
                      knots, draws, seed, workers);
    auto report_json = [](const RiskReport& r) {
        return json{{"method", r.method},
                    {"bayes_risk", r.bayes_risk},
                    {"standard_error", r.standard_error},
                    {"loss", r.loss == LossKind::Squared ? "squared"
                                                         : "zero-one"}};
    };
    summary["bpnm"] = report_json(bpnm_report);
    summary["bayes_rule"] = report_json(bayes_report);
    summary["risk_ratio"] = bpnm_report.bayes_risk / bayes_report.bayes_risk;
    summary["rule_size"] = n;
    summary["draws"] = draws;

    Eigen::MatrixXd rule_matrix(n, 2);
    for (int i = 0; i < n; ++i) {
        rule_matrix(i, 0) = knots[static_cast<std::size_t>(i)];
        rule_matrix(i, 1) = rule_weights[static_cast<std::size_t>(i)];
    }
    write_samples_csv(joined(out_dir, cfg.output.samples), rule_matrix);
    summary["wall_time_seconds"] = clock.seconds();
    write_json_file(joined(out_dir, cfg.output.summary), summary);
    return summary;
}

json run_counterexample(const ExperimentConfig& cfg,
                        const std::string& out_dir, int workers) {
    WallClock clock;
    json summary = base_summary(cfg, workers);
    std::vector<ExactRisk> risks = discrete_counterexample();
    json entries = json::array();
    std::vector<std::vector<std::string>> table;
    for (const ExactRisk& row : risks) {
        entries.push_back({{"method", row.method},
                           {"information", row.information},
                           {"risk", row.risk.repr()},
                           {"value", row.risk.value()}});
        table.push_back({row.method, "\"" + row.information + "\"",
                         std::to_string(row.risk.num),
                         std::to_string(row.risk.den),
                         format_double(row.risk.value())});
    }
    summary["risks"] = entries;
    summary["exact"] = true;
    write_table_csv(joined(out_dir, cfg.output.grid),
                    {"method", "information", "numerator", "denominator",
                     "value"},
                    table);
    write_samples_csv(joined(out_dir, cfg.output.samples),
                      Eigen::MatrixXd(0, 0));
    summary["wall_time_seconds"] = clock.seconds();
    write_json_file(joined(out_dir, cfg.output.summary), summary);
    return summary;
}

json run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                    int workers) {
    fs::create_directories(out_dir);
    switch (cfg.experiment) {
        case ExperimentKind::Quadrature:
            return run_quadrature(cfg, out_dir, workers);
        case ExperimentKind::Poisson:
            return run_poisson(cfg, out_dir, workers);
        case ExperimentKind::Painleve:
            return run_painleve(cfg, out_dir, workers);
        case ExperimentKind::PipelineDemo:
            return run_pipeline_demo(cfg, out_dir, workers);
        case ExperimentKind::Risk:
            return run_risk(cfg, out_dir, workers);
        case ExperimentKind::Counterexample:
            return run_counterexample(cfg, out_dir, workers);
    }
    throw ConfigError("unknown experiment kind");
}

}  // namespace bpnm
