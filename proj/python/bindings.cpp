// Python bindings for the main operations: bases and series priors,
// information operators, closed-form Gaussian conditioning, the
// disintegration samplers with evidence estimation, the pipeline
// demonstration, decision-theoretic risks and the experiment runner.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bpnm/config.hpp"
#include "bpnm/decision.hpp"
#include "bpnm/disintegration.hpp"
#include "bpnm/errors.hpp"
#include "bpnm/evidence.hpp"
#include "bpnm/experiments.hpp"
#include "bpnm/gaussian_solver.hpp"
#include "bpnm/pipeline.hpp"
#include "bpnm/rng.hpp"
#include "bpnm/series_prior.hpp"

namespace py = pybind11;

using namespace bpnm;

namespace {

Point make_point(double t1, double t2) { return Point{t1, t2}; }

py::dict coherence_dict(const CoherenceReport& report) {
    py::dict out;
    out["status"] = report.coherent()
                        ? "coherent"
                        : report.status == CoherenceStatus::Incoherent
                              ? "incoherent"
                              : "undeclared";
    out["incoherent"] = report.incoherent;
    out["undeclared"] = report.undeclared;
    return out;
}

}  // namespace

PYBIND11_MODULE(_bpnm, m) {
    m.doc() =
        "Bayesian probabilistic numerical methods: series priors, "
        "closed-form Gaussian solvers, disintegration samplers, pipelines "
        "and decision-theoretic risk analysis.";

    py::register_exception<Error>(m, "BpnmError");

    // ---- bases and priors ----
    py::class_<DomainMap>(m, "DomainMap")
        .def_static("interval", &DomainMap::interval, py::arg("lo"),
                    py::arg("hi"))
        .def_static("unit_square", &DomainMap::unit_square)
        .def_readonly("dimension", &DomainMap::dimension);

    py::class_<BasisSet>(m, "BasisSet")
        .def_static("line", &BasisSet::line, py::arg("max_degree"),
                    py::arg("map"))
        .def_static("triangle", &BasisSet::triangle, py::arg("total_degree"),
                    py::arg("map"))
        .def("size", &BasisSet::size)
        .def("dimension", &BasisSet::dimension)
        .def(
            "value",
            [](const BasisSet& b, int i, double t1, double t2) {
                return b.value(i, make_point(t1, t2));
            },
            py::arg("i"), py::arg("t1"), py::arg("t2") = 0.0)
        .def(
            "row_values",
            [](const BasisSet& b, double t1, double t2) {
                return b.row_values(make_point(t1, t2));
            },
            py::arg("t1"), py::arg("t2") = 0.0);

    py::class_<ScaleSequence>(m, "ScaleSequence")
        .def_static("power_decay", &ScaleSequence::power_decay,
                    py::arg("alpha"), py::arg("p"))
        .def_static("geometric", &ScaleSequence::geometric, py::arg("alpha"),
                    py::arg("beta"))
        .def("gamma", &ScaleSequence::gamma, py::arg("i"));

    py::enum_<CoefficientFamily>(m, "CoefficientFamily")
        .value("Gaussian", CoefficientFamily::Gaussian)
        .value("Cauchy", CoefficientFamily::Cauchy)
        .value("Uniform", CoefficientFamily::Uniform);

    py::class_<SeriesPrior>(m, "SeriesPrior")
        .def(py::init<CoefficientFamily, ScaleSequence, double, BasisSet>(),
             py::arg("family"), py::arg("scales"), py::arg("x0"),
             py::arg("basis"))
        .def("size", &SeriesPrior::size)
        .def("x0", &SeriesPrior::x0)
        .def("gammas", &SeriesPrior::gammas)
        .def(
            "sample",
            [](const SeriesPrior& prior, std::uint64_t seed, int n) {
                Eigen::MatrixXd draws(n, prior.size());
                for (int i = 0; i < n; ++i) {
                    RngStream rng(seed, StreamPurpose::Generic, 0, i);
                    draws.row(i) = sample_prior(prior, rng).transpose();
                }
                return draws;
            },
            py::arg("seed"), py::arg("n") = 1);

    // ---- information operators ----
    py::class_<Functional>(m, "Functional")
        .def_static(
            "point_eval",
            [](double t1, double t2) {
                return Functional::point_eval(make_point(t1, t2));
            },
            py::arg("t1"), py::arg("t2") = 0.0)
        .def_static(
            "deriv_eval",
            [](double t1, double t2, int d1, int d2) {
                return Functional::deriv_eval(make_point(t1, t2), d1, d2);
            },
            py::arg("t1"), py::arg("t2"), py::arg("d1"), py::arg("d2") = 0)
        .def_static("ode_residual_painleve",
                    &Functional::ode_residual_painleve, py::arg("t"))
        .def_property_readonly("is_linear", &Functional::is_linear);

    py::class_<InformationOperator>(m, "InformationOperator")
        .def(py::init<>())
        .def_readwrite("functionals", &InformationOperator::functionals)
        .def_readwrite("observed", &InformationOperator::observed)
        .def_readwrite("threshold", &InformationOperator::threshold)
        .def("size", &InformationOperator::size);

    m.def("painleve_operator", &painleve_operator, py::arg("m"));
    m.def("poisson_operator", &poisson_operator, py::arg("k"));

    py::enum_<InequalityConstraint::Direction>(m, "Direction")
        .value("LessEqual", InequalityConstraint::Direction::LessEqual)
        .value("GreaterEqual", InequalityConstraint::Direction::GreaterEqual);

    py::class_<InequalityConstraint>(m, "InequalityConstraint")
        .def(py::init([](const Functional& f,
                         InequalityConstraint::Direction d) {
                 return InequalityConstraint{f, d};
             }),
             py::arg("functional"), py::arg("direction"))
        .def_readwrite("functional", &InequalityConstraint::functional)
        .def_readwrite("direction", &InequalityConstraint::direction);

    // ---- closed-form Gaussian conditioning ----
    py::class_<Interval>(m, "Interval")
        .def(py::init([](double lo, double hi) {
                 return Interval{lo, hi};
             }),
             py::arg("lower") = 0.0, py::arg("upper") = 1.0)
        .def_readwrite("lower", &Interval::lower)
        .def_readwrite("upper", &Interval::upper);

    py::class_<KernelSpec>(m, "KernelSpec")
        .def_static("wiener_min", &KernelSpec::wiener_min,
                    py::arg("mean") = 0.0)
        .def_static("squared_exp", &KernelSpec::squared_exp, py::arg("ell"),
                    py::arg("mean") = 0.0)
        .def_static("integrated_wiener", &KernelSpec::integrated_wiener,
                    py::arg("mean") = 0.0)
        .def_static("series_induced", &KernelSpec::series_induced,
                    py::arg("prior"))
        .def_readonly("mean", &KernelSpec::mean);

    py::class_<GaussianPosterior>(m, "GaussianPosterior")
        .def_readonly("mean", &GaussianPosterior::mean)
        .def_readonly("covariance", &GaussianPosterior::covariance)
        .def("scalar_mean", &GaussianPosterior::scalar_mean)
        .def("scalar_variance", &GaussianPosterior::scalar_variance);

    m.def("kernel_value", &kernel_value, py::arg("kernel"), py::arg("s"),
          py::arg("t"));
    m.def("bq_posterior", &bq_posterior, py::arg("kernel"), py::arg("knots"),
          py::arg("values"), py::arg("domain") = Interval{});
    m.def("bq_weights", &bq_weights, py::arg("kernel"), py::arg("knots"),
          py::arg("domain") = Interval{});
    m.def("collocation_posterior", &collocation_posterior, py::arg("kernel"),
          py::arg("operator"), py::arg("queries"));
    m.def("gaussian_evidence", &gaussian_evidence, py::arg("kernel"),
          py::arg("operator"));
    m.def("coefficient_posterior", &coefficient_posterior, py::arg("prior"),
          py::arg("operator"));

    // ---- disintegration samplers ----
    py::class_<TemperatureSchedule>(m, "TemperatureSchedule")
        .def_static("log_uniform", &TemperatureSchedule::log_uniform,
                    py::arg("delta_first"), py::arg("delta_last"),
                    py::arg("m"))
        .def_static("from_deltas", &TemperatureSchedule::from_deltas,
                    py::arg("deltas"))
        .def_readonly("deltas", &TemperatureSchedule::deltas)
        .def("size", &TemperatureSchedule::size);

    py::class_<RelaxationKernel>(m, "RelaxationKernel")
        .def_static("squared_exponential",
                    &RelaxationKernel::squared_exponential)
        .def_static("indicator", &RelaxationKernel::indicator);

    py::class_<MalaConfig>(m, "MalaConfig")
        .def(py::init<>())
        .def_readwrite("tau0", &MalaConfig::tau0)
        .def_readwrite("step_sizes", &MalaConfig::step_sizes)
        .def_readwrite("preconditioner", &MalaConfig::preconditioner)
        .def_readwrite("steps_per_kernel", &MalaConfig::steps_per_kernel);

    py::class_<ParticleEnsemble>(m, "ParticleEnsemble")
        .def_readonly("states", &ParticleEnsemble::states)
        .def_readonly("weights", &ParticleEnsemble::weights)
        .def_readonly("ess", &ParticleEnsemble::ess)
        .def_readonly("acceptance_rate", &ParticleEnsemble::acceptance_rate)
        .def_readonly("failed", &ParticleEnsemble::failed);

    py::class_<RungStats>(m, "RungStats")
        .def_readonly("delta", &RungStats::delta)
        .def_readonly("ess", &RungStats::ess)
        .def_readonly("acceptance_rate", &RungStats::acceptance_rate)
        .def_readonly("mean_r2", &RungStats::mean_r2)
        .def_readonly("se_r2", &RungStats::se_r2);

    py::class_<SmcHistory>(m, "SmcHistory")
        .def_readonly("rungs", &SmcHistory::rungs)
        .def_readonly("failed", &SmcHistory::failed)
        .def_readonly("failure_rung", &SmcHistory::failure_rung)
        .def_readonly("n_observations", &SmcHistory::n_observations);

    py::class_<SmcResult>(m, "SmcResult")
        .def_readonly("ensemble", &SmcResult::ensemble)
        .def_readonly("history", &SmcResult::history);

    py::class_<PtResult>(m, "PtResult")
        .def_readonly("cold_trace", &PtResult::cold_trace)
        .def_readonly("r2_trace", &PtResult::r2_trace)
        .def_readonly("acceptance", &PtResult::acceptance)
        .def_readonly("swap_attempts", &PtResult::swap_attempts)
        .def_readonly("swap_accepts", &PtResult::swap_accepts);

    m.def("smc_nd", &smc_nd, py::arg("prior"), py::arg("operator"),
          py::arg("relaxation"), py::arg("schedule"), py::arg("particles"),
          py::arg("config"), py::arg("seed"),
          py::arg("constraints") = std::vector<InequalityConstraint>{},
          py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("pt_nd", &pt_nd, py::arg("prior"), py::arg("operator"),
          py::arg("relaxation"), py::arg("schedule"), py::arg("iterations"),
          py::arg("config"), py::arg("seed"),
          py::arg("constraints") = std::vector<InequalityConstraint>{},
          py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());

    py::class_<EvidenceEstimate>(m, "EvidenceEstimate")
        .def_readonly("log_evidence", &EvidenceEstimate::log_evidence)
        .def_readonly("log_relaxed", &EvidenceEstimate::log_relaxed)
        .def_readonly("standard_error", &EvidenceEstimate::combined_se)
        .def_readonly("n_observations", &EvidenceEstimate::n_observations);

    m.def("estimate_log_evidence", &estimate_log_evidence,
          py::arg("history"));
    m.def("pt_history", &pt_history, py::arg("result"), py::arg("schedule"),
          py::arg("operator"), py::arg("burn_in"), py::arg("batches") = 20);
    m.def("bayes_factor", &bayes_factor, py::arg("numerator"),
          py::arg("denominator"));

    // ---- pipeline demonstration ----
    py::class_<DistributedIntegrationDemo>(m, "DistributedIntegrationDemo")
        .def_readonly("all_knots", &DistributedIntegrationDemo::all_knots)
        .def_readonly("all_values", &DistributedIntegrationDemo::all_values)
        .def_readonly("dimensions", &DistributedIntegrationDemo::dimensions)
        .def_readonly("witness", &DistributedIntegrationDemo::witness);

    m.def(
        "distributed_integration_demo",
        [](const KernelSpec& kernel, int knots_per_half, py::function data) {
            return distributed_integration_demo(
                kernel, knots_per_half,
                [&data](double t) { return data(t).cast<double>(); });
        },
        py::arg("kernel"), py::arg("m"), py::arg("data"));
    m.def(
        "demo_analytic",
        [](const DistributedIntegrationDemo& demo) {
            return execute(demo.graph, demo.methods, demo.sources,
                           ExecutionMode::AnalyticGaussian)
                .terminal;
        },
        py::arg("demo"));
    m.def(
        "demo_ancestral",
        [](const DistributedIntegrationDemo& demo, std::uint64_t seed,
           int paths, int workers) {
            Eigen::VectorXd out = execute(demo.graph, demo.methods,
                                          demo.sources,
                                          ExecutionMode::Ancestral, seed,
                                          paths, workers)
                                      .samples.col(0);
            return out;
        },
        py::arg("demo"), py::arg("seed"), py::arg("paths"),
        py::arg("workers") = 1);
    m.def(
        "demo_coherence",
        [](const DistributedIntegrationDemo& demo) {
            DependenceGraph graph = dependence_graph(demo.graph);
            // Witness-only verification of every independence requirement.
            CoherenceDeclaration declaration;
            declaration.dimensions = demo.dimensions;
            declaration.witness = demo.witness;
            return coherence_dict(check_coherence(graph, declaration));
        },
        py::arg("demo"));

    // ---- decision-theoretic risks ----
    py::class_<TrapeziumRule>(m, "TrapeziumRule")
        .def_readonly("knots", &TrapeziumRule::knots)
        .def_readonly("weights", &TrapeziumRule::weights)
        .def_readonly("risk", &TrapeziumRule::risk);

    m.def("wce1_risk", &wce1_risk, py::arg("knots"), py::arg("weights"));
    m.def("optimal_trapezium", &optimal_trapezium, py::arg("n"),
          py::arg("seed") = 0,
          py::call_guard<py::gil_scoped_release>());

    py::enum_<RiskMethod>(m, "RiskMethod")
        .value("BpnmGaussian", RiskMethod::BpnmGaussian)
        .value("BayesRuleMean", RiskMethod::BayesRuleMean);

    py::class_<RiskReport>(m, "RiskReport")
        .def_readonly("bayes_risk", &RiskReport::bayes_risk)
        .def_readonly("standard_error", &RiskReport::standard_error)
        .def_readonly("method", &RiskReport::method);

    m.def("mc_bayes_risk", &mc_bayes_risk, py::arg("prior"),
          py::arg("method"), py::arg("knots"), py::arg("n_draws"),
          py::arg("seed"), py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("mc_linear_rule_risk", &mc_linear_rule_risk, py::arg("knots"),
          py::arg("weights"), py::arg("n_draws"), py::arg("seed"),
          py::arg("workers") = 1,
          py::call_guard<py::gil_scoped_release>());

    py::class_<Fraction>(m, "Fraction")
        .def_readonly("num", &Fraction::num)
        .def_readonly("den", &Fraction::den)
        .def("value", &Fraction::value)
        .def("__repr__", &Fraction::repr);

    py::class_<ExactRisk>(m, "ExactRisk")
        .def_readonly("method", &ExactRisk::method)
        .def_readonly("information", &ExactRisk::information)
        .def_readonly("risk", &ExactRisk::risk);

    m.def("discrete_counterexample", &discrete_counterexample);

    // ---- experiment runner ----
    m.def(
        "run_experiment",
        [](const std::string& config_path, const std::string& out_dir,
           int workers, py::object seed) {
            ExperimentConfig config = load_config(config_path);
            std::vector<std::string> problems = validate_config(config);
            if (!problems.empty()) throw ConfigError(problems.front());
            if (!seed.is_none())
                config.sampler.seed = seed.cast<std::uint64_t>();
            nlohmann::json summary =
                run_experiment(config, out_dir, workers);
            py::module_ json = py::module_::import("json");
            return json.attr("loads")(summary.dump());
        },
        py::arg("config_path"), py::arg("output_dir") = ".",
        py::arg("workers") = 1, py::arg("seed") = py::none());
    m.def(
        "validate_config",
        [](const std::string& config_path) {
            return validate_config(load_config(config_path));
        },
        py::arg("config_path"));
}
