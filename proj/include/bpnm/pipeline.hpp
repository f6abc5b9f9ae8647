// Composition of probabilistic numerical methods: bipartite pipeline graphs,
// compatibility validation, the induced dependence graph over information
// nodes, coherence checking against declared or witnessed conditional
// independences, and execution by Gaussian composition or ancestral sampling.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bpnm/disintegration.hpp"
#include "bpnm/gaussian_solver.hpp"
#include "bpnm/info_operator.hpp"
#include "bpnm/mala.hpp"

namespace bpnm {

// Bipartite DAG of information nodes (string labels) and method nodes
// (labels 1..n by position). inputs[i][j] names the information node bound
// to in-edge j+1 of method i+1; outputs[i] names the single child node of
// method i+1. The child of the last method must be the unique terminal node.
struct PipelineGraph {
    std::vector<std::vector<std::string>> inputs;
    std::vector<std::string> outputs;

    int methods() const { return static_cast<int>(outputs.size()); }
    // Every distinct information label, sources first in order of first use.
    std::vector<std::string> info_labels() const;
    std::string terminal() const;
    // Method labels in an order where parents precede children.
    std::vector<int> method_order() const;
    // Throws StructuralError on shape violations (empty graph, an info node
    // written by two methods, several childless nodes, cycles).
    void validate() const;
};

// Information bound to one in-edge of a method: either a concrete fragment
// of an information operator (point evaluations and other functionals of the
// unknown function) or a slot filled at run time by a parent method's QoI.
struct InfoComponent {
    static InfoComponent fragment(std::vector<Functional> functionals);
    static InfoComponent parent_slot(int dimension);

    std::vector<Functional> functionals;
    int dimension = 0;
    bool from_parent = false;
};

enum class UpdaterKind {
    ConjugateGaussian,
    Disintegration,
    DeterministicMap,
    SumCombiner,
};

// Sampler configuration for a Disintegration method node; each ancestral
// path conditions on its realised input values and draws one state.
struct DisintegrationSettings {
    std::shared_ptr<const SeriesPrior> prior;
    RelaxationKernel phi = RelaxationKernel::squared_exponential();
    TemperatureSchedule schedule;
    int particles = 64;
    MalaConfig mala;
    std::vector<Functional> qoi;  // evaluated at the sampled state
};

// One probabilistic numerical method (A_i, B_i). The component list mirrors
// the in-edges of the pipeline node the method is assigned to.
struct MethodSpec {
    UpdaterKind updater = UpdaterKind::ConjugateGaussian;
    std::vector<InfoComponent> components;

    // ConjugateGaussian: Bayesian quadrature of the kernel prior over
    // qoi_interval, conditioned on the point-evaluation fragments.
    KernelSpec kernel = KernelSpec::wiener_min();
    Interval qoi_interval{};

    // DeterministicMap: q = map(inputs), with declared output dimension.
    std::function<Eigen::VectorXd(const std::vector<Eigen::VectorXd>&)> map;
    int map_dimension = 1;

    std::optional<DisintegrationSettings> disintegration;

    int qoi_dimension() const;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool compatible() const { return violations.empty(); }
};

// Motif rules: (i) methods sharing an information node bind identical
// components; (ii) a method output feeding another method fills a parent
// slot of matching dimension. Violations are reported, never thrown;
// redundant duplicated fragments produce warnings only.
ValidationReport check_compatibility(const PipelineGraph& graph,
                                     const std::vector<MethodSpec>& methods);

// Information-node DAG obtained by contracting every info -> method -> info
// motif. Nodes are listed topologically with the sources first (indices
// 1..sources) and the terminal last; edges use 1-based positions in `order`.
struct DependenceGraph {
    std::vector<std::string> order;
    std::vector<std::pair<int, int>> edges;
    int sources = 0;

    int size() const { return static_cast<int>(order.size()); }
    std::vector<int> parents(int node) const;
};

DependenceGraph dependence_graph(const PipelineGraph& graph);

// One conditional-independence statement Y_node indep Y_{independent_of}
// given Y_{given}, indices into DependenceGraph::order.
struct CiStatement {
    int node = 0;
    std::vector<int> independent_of;
    std::vector<int> given;
};

// User-asserted statements, plus an optional Gaussian witness: the joint
// covariance of (Y_1, ..., Y_J) in dependence-graph order with block sizes
// `dimensions`. Witnessed statements are verified via partial covariance.
struct CoherenceDeclaration {
    std::vector<CiStatement> statements;
    std::vector<int> dimensions;
    std::optional<Eigen::MatrixXd> witness;
};

enum class CoherenceStatus { Coherent, Incoherent, Undeclared };

struct CoherenceReport {
    CoherenceStatus status = CoherenceStatus::Coherent;
    std::vector<std::string> incoherent;  // witness contradicts the statement
    std::vector<std::string> undeclared;  // neither declared nor witnessed

    bool coherent() const { return status == CoherenceStatus::Coherent; }
};

// Requires, for every non-source node j, that Y_j is independent of its
// non-parent predecessors given its parents; each requirement must be
// declared or hold in the witness (partial covariance zero to 1e-8).
CoherenceReport check_coherence(const DependenceGraph& graph,
                                const CoherenceDeclaration& declaration);

enum class ExecutionMode { AnalyticGaussian, Ancestral };

// Terminal-node law. Analytic mode fills `terminal`; ancestral mode fills
// `samples` (one row per path) and the matching moment summary.
struct PipelineResult {
    GaussianPosterior terminal;
    Eigen::MatrixXd samples;
};

// Topological sweep over the method nodes. Analytic-Gaussian mode composes
// closed-form posteriors and throws ModeError where an updater cannot
// consume a distribution input; ancestral mode realises every node per path
// using counter-based streams, so results do not depend on `workers`.
PipelineResult execute(const PipelineGraph& graph,
                       const std::vector<MethodSpec>& methods,
                       const std::map<std::string, Eigen::VectorXd>& sources,
                       ExecutionMode mode, std::uint64_t seed = 0,
                       int paths = 0, int workers = 1);

// The distributed-integration example: integrate x over [0, 1] by summing
// Bayesian quadrature over [0, 1/2] (knots t_1..t_m) and over [1/2, 1]
// (knots t_m..t_2m), t_i = i/(2m), sharing the midpoint knot. Bundles the
// graph, the three methods, source values from `data`, the dependence-graph
// dimensions and the joint witness covariance under `kernel`.
struct DistributedIntegrationDemo {
    PipelineGraph graph;
    std::vector<MethodSpec> methods;
    std::map<std::string, Eigen::VectorXd> sources;
    std::vector<int> dimensions;
    Eigen::MatrixXd witness;
    std::vector<double> all_knots;   // t_1..t_2m
    Eigen::VectorXd all_values;      // data at the knots
};

DistributedIntegrationDemo distributed_integration_demo(
    const KernelSpec& kernel, int m, const std::function<double(double)>& data);

}  // namespace bpnm
