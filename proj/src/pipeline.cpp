#include "bpnm/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bpnm/chebyshev.hpp"
#include "bpnm/errors.hpp"
#include "bpnm/parallel.hpp"
#include "bpnm/rng.hpp"

namespace bpnm {

namespace {

bool same_functional(const Functional& a, const Functional& b) {
    return a.kind == b.kind && a.t.t1 == b.t.t1 && a.t.t2 == b.t.t2 &&
           a.d1 == b.d1 && a.d2 == b.d2 && a.kappa == b.kappa &&
           a.axis == b.axis && a.sign == b.sign;
}

bool same_component(const InfoComponent& a, const InfoComponent& b) {
    if (a.from_parent != b.from_parent || a.dimension != b.dimension)
        return false;
    if (a.functionals.size() != b.functionals.size()) return false;
    for (std::size_t k = 0; k < a.functionals.size(); ++k)
        if (!same_functional(a.functionals[k], b.functionals[k])) return false;
    return true;
}

}  // namespace

std::vector<std::string> PipelineGraph::info_labels() const {
    std::vector<std::string> labels;
    auto add = [&](const std::string& l) {
        if (std::find(labels.begin(), labels.end(), l) == labels.end())
            labels.push_back(l);
    };
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        for (const std::string& l : inputs[i]) add(l);
        if (i < outputs.size()) add(outputs[i]);
    }
    return labels;
}

std::string PipelineGraph::terminal() const {
    if (outputs.empty()) throw StructuralError("pipeline has no method nodes");
    return outputs.back();
}

std::vector<int> PipelineGraph::method_order() const {
    int n = methods();
    // method j waits for method i when i's child node feeds an in-edge of j
    std::vector<std::set<int>> waits(n);
    for (int j = 0; j < n; ++j)
        for (const std::string& l : inputs[j])
            for (int i = 0; i < n; ++i)
                if (i != j && outputs[i] == l) waits[j].insert(i + 1);
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    for (int round = 0; round < n; ++round) {
        int pick = -1;
        for (int i = 0; i < n && pick < 0; ++i) {
            if (placed[i]) continue;
            bool ready = true;
            for (int w : waits[i]) ready = ready && placed[w - 1];
            if (ready) pick = i;
        }
        if (pick < 0)
            throw StructuralError("pipeline contains a method-level cycle");
        placed[pick] = true;
        order.push_back(pick + 1);
    }
    return order;
}

void PipelineGraph::validate() const {
    int n = methods();
    if (n == 0) throw StructuralError("pipeline has no method nodes");
    if (inputs.size() != outputs.size())
        throw StructuralError("pipeline in-edge and out-edge lists disagree");
    for (int i = 0; i < n; ++i)
        if (inputs[i].empty())
            throw StructuralError("method " + std::to_string(i + 1) +
                                  " has no in-edges");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (outputs[i] == outputs[j])
                throw StructuralError("information node '" + outputs[i] +
                                      "' is written by two methods");
    // the output of a method may not also feed it (no self-loops)
    for (int i = 0; i < n; ++i)
        for (const std::string& l : inputs[i])
            if (l == outputs[i])
                throw StructuralError("method " + std::to_string(i + 1) +
                                      " consumes its own output");
    // unique childless information node, and it belongs to the last method
    std::set<std::string> consumed;
    for (const auto& in : inputs) consumed.insert(in.begin(), in.end());
    std::vector<std::string> childless;
    for (const std::string& l : info_labels())
        if (consumed.count(l) == 0) childless.push_back(l);
    if (childless.size() != 1)
        throw StructuralError("pipeline must have exactly one terminal node, "
                              "found " + std::to_string(childless.size()));
    if (childless.front() != outputs.back())
        throw StructuralError("terminal node '" + childless.front() +
                              "' is not the child of the last method");
    method_order();  // throws on cycles
}

InfoComponent InfoComponent::fragment(std::vector<Functional> functionals) {
    InfoComponent c;
    c.dimension = static_cast<int>(functionals.size());
    c.functionals = std::move(functionals);
    return c;
}

InfoComponent InfoComponent::parent_slot(int dimension) {
    if (dimension < 1)
        throw RangeError("parent slot dimension must be positive");
    InfoComponent c;
    c.dimension = dimension;
    c.from_parent = true;
    return c;
}

int MethodSpec::qoi_dimension() const {
    switch (updater) {
        case UpdaterKind::ConjugateGaussian:
            return 1;
        case UpdaterKind::SumCombiner:
            return components.empty() ? 0 : components.front().dimension;
        case UpdaterKind::DeterministicMap:
            return map_dimension;
        case UpdaterKind::Disintegration:
            return disintegration
                       ? static_cast<int>(disintegration->qoi.size())
                       : 0;
    }
    return 0;
}

ValidationReport check_compatibility(const PipelineGraph& graph,
                                     const std::vector<MethodSpec>& methods) {
    graph.validate();
    ValidationReport report;
    int n = graph.methods();
    if (static_cast<int>(methods.size()) != n) {
        report.violations.push_back(
            "pipeline has " + std::to_string(n) + " method nodes but " +
            std::to_string(methods.size()) + " methods were supplied");
        return report;
    }
    for (int i = 0; i < n; ++i)
        if (methods[i].components.size() != graph.inputs[i].size())
            report.violations.push_back(
                "method " + std::to_string(i + 1) + " declares " +
                std::to_string(methods[i].components.size()) +
                " components for " + std::to_string(graph.inputs[i].size()) +
                " in-edges");
    if (!report.violations.empty()) return report;

    // rule (i): edges sharing an information node bind identical components
    for (const std::string& label : graph.info_labels()) {
        int fi = -1, fj = -1;
        for (int i = 0; i < n; ++i)
            for (std::size_t j = 0; j < graph.inputs[i].size(); ++j) {
                if (graph.inputs[i][j] != label) continue;
                if (fi < 0) {
                    fi = i;
                    fj = static_cast<int>(j);
                } else if (!same_component(
                               methods[fi].components[fj],
                               methods[i].components[j])) {
                    std::ostringstream msg;
                    msg << "rule (i): information node '" << label
                        << "' binds different components at method " << fi + 1
                        << " edge " << fj + 1 << " and method " << i + 1
                        << " edge " << j + 1;
                    report.violations.push_back(msg.str());
                }
            }
    }

    // rule (ii): a method output must fill a parent slot of its dimension
    for (int i = 0; i < n; ++i) {
        const std::string& label = graph.outputs[i];
        int qdim = methods[i].qoi_dimension();
        for (int j = 0; j < n; ++j)
            for (std::size_t s = 0; s < graph.inputs[j].size(); ++s) {
                if (graph.inputs[j][s] != label) continue;
                const InfoComponent& c = methods[j].components[s];
                std::ostringstream at;
                at << "rule (ii): method " << j + 1 << " edge " << s + 1;
                if (!c.from_parent)
                    report.violations.push_back(
                        at.str() + " consumes the output of method " +
                        std::to_string(i + 1) +
                        " but is not declared as a parent slot");
                else if (c.dimension != qdim)
                    report.violations.push_back(
                        at.str() + " expects dimension " +
                        std::to_string(c.dimension) + " but method " +
                        std::to_string(i + 1) + " outputs dimension " +
                        std::to_string(qdim));
            }
    }

    // redundancy: equal fragments under distinct labels are allowed but
    // break the Bayesian interpretation, so flag them
    std::vector<std::pair<std::string, const InfoComponent*>> fragments;
    for (int i = 0; i < n; ++i)
        for (std::size_t j = 0; j < graph.inputs[i].size(); ++j) {
            const InfoComponent& c = methods[i].components[j];
            if (c.from_parent || c.functionals.empty()) continue;
            const std::string& label = graph.inputs[i][j];
            for (const auto& [other, comp] : fragments)
                if (other != label && same_component(*comp, c)) {
                    report.warnings.push_back(
                        "information nodes '" + other + "' and '" + label +
                        "' carry identical fragments; redundant information "
                        "is not recycled and the computation will not be "
                        "Bayesian");
                    break;
                }
            fragments.emplace_back(label, &c);
        }
    return report;
}

DependenceGraph dependence_graph(const PipelineGraph& graph) {
    graph.validate();
    DependenceGraph g;
    std::set<std::string> written(graph.outputs.begin(), graph.outputs.end());
    for (const std::string& l : graph.info_labels())
        if (written.count(l) == 0) g.order.push_back(l);
    g.sources = static_cast<int>(g.order.size());
    for (int i : graph.method_order())
        g.order.push_back(graph.outputs[i - 1]);
    auto position = [&](const std::string& l) {
        auto it = std::find(g.order.begin(), g.order.end(), l);
        return static_cast<int>(it - g.order.begin()) + 1;
    };
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < graph.methods(); ++i) {
        int child = position(graph.outputs[i]);
        for (const std::string& l : graph.inputs[i])
            edges.emplace(position(l), child);
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

std::vector<int> DependenceGraph::parents(int node) const {
    std::vector<int> result;
    for (const auto& [from, to] : edges)
        if (to == node) result.push_back(from);
    std::sort(result.begin(), result.end());
    return result;
}

namespace {

std::string describe_statement(int node, const std::vector<int>& others,
                               const std::vector<int>& given) {
    std::ostringstream msg;
    msg << "Y" << node << " _||_ {";
    for (std::size_t i = 0; i < others.size(); ++i)
        msg << (i ? ",Y" : "Y") << others[i];
    msg << "} | {";
    for (std::size_t i = 0; i < given.size(); ++i)
        msg << (i ? ",Y" : "Y") << given[i];
    msg << "}";
    return msg.str();
}

// offsets of the witness blocks implied by the node dimensions
std::vector<int> block_offsets(const std::vector<int>& dims) {
    std::vector<int> off(dims.size() + 1, 0);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 1) throw RangeError("node dimensions must be positive");
        off[i + 1] = off[i] + dims[i];
    }
    return off;
}

Eigen::MatrixXd witness_block(const Eigen::MatrixXd& sigma,
                              const std::vector<int>& off,
                              const std::vector<int>& dims,
                              const std::vector<int>& rows,
                              const std::vector<int>& cols) {
    int nr = 0, nc = 0;
    for (int r : rows) nr += dims[r - 1];
    for (int c : cols) nc += dims[c - 1];
    Eigen::MatrixXd block(nr, nc);
    int ro = 0;
    for (int r : rows) {
        int co = 0;
        for (int c : cols) {
            block.block(ro, co, dims[r - 1], dims[c - 1]) =
                sigma.block(off[r - 1], off[c - 1], dims[r - 1], dims[c - 1]);
            co += dims[c - 1];
        }
        ro += dims[r - 1];
    }
    return block;
}

}  // namespace

CoherenceReport check_coherence(const DependenceGraph& graph,
                                const CoherenceDeclaration& declaration) {
    int total = graph.size();
    for (const CiStatement& st : declaration.statements) {
        if (st.node < 1 || st.node > total)
            throw IndexError("statement node index out of range");
        for (int i : st.independent_of)
            if (i < 1 || i >= st.node)
                throw IndexError(
                    "statement independence set breaks topological order");
        for (int i : st.given)
            if (i < 1 || i >= st.node)
                throw IndexError(
                    "statement conditioning set breaks topological order");
    }
    const Eigen::MatrixXd* sigma = nullptr;
    std::vector<int> off;
    if (declaration.witness) {
        if (static_cast<int>(declaration.dimensions.size()) != total)
            throw StructuralError(
                "witness dimensions must cover every dependence-graph node");
        off = block_offsets(declaration.dimensions);
        sigma = &*declaration.witness;
        if (sigma->rows() != off.back() || sigma->cols() != off.back())
            throw StructuralError(
                "witness covariance size does not match node dimensions");
    }

    CoherenceReport report;
    for (int j = graph.sources + 1; j <= total; ++j) {
        std::vector<int> parents = graph.parents(j);
        std::vector<int> others;
        for (int i = 1; i < j; ++i)
            if (std::find(parents.begin(), parents.end(), i) == parents.end())
                others.push_back(i);
        if (others.empty()) continue;

        bool declared = false;
        for (const CiStatement& st : declaration.statements) {
            if (st.node != j) continue;
            std::vector<int> given = st.given;
            std::sort(given.begin(), given.end());
            if (given != parents) continue;
            bool covers = true;
            for (int o : others)
                covers = covers &&
                         std::find(st.independent_of.begin(),
                                   st.independent_of.end(),
                                   o) != st.independent_of.end();
            if (covers) {
                declared = true;
                break;
            }
        }
        if (declared) continue;

        std::string desc = describe_statement(j, others, parents);
        if (!sigma) {
            report.undeclared.push_back(desc);
            continue;
        }
        const std::vector<int>& dims = declaration.dimensions;
        Eigen::MatrixXd cross =
            witness_block(*sigma, off, dims, {j}, others);
        if (!parents.empty()) {
            Eigen::MatrixXd cc =
                witness_block(*sigma, off, dims, parents, parents);
            Eigen::MatrixXd cj =
                witness_block(*sigma, off, dims, parents, {j});
            Eigen::MatrixXd cs =
                witness_block(*sigma, off, dims, parents, others);
            cross -= cj.transpose() * cc.ldlt().solve(cs);
        }
        if (cross.cwiseAbs().maxCoeff() > 1e-8)
            report.incoherent.push_back(desc);
    }
    if (!report.incoherent.empty())
        report.status = CoherenceStatus::Incoherent;
    else if (!report.undeclared.empty())
        report.status = CoherenceStatus::Undeclared;
    else
        report.status = CoherenceStatus::Coherent;
    return report;
}

namespace {

// value carried by an information node during execution
struct NodeValue {
    bool is_distribution = false;
    Eigen::VectorXd value;
    GaussianPosterior distribution;

    int dim() const {
        return is_distribution ? distribution.size()
                               : static_cast<int>(value.size());
    }
    Eigen::VectorXd mean() const {
        return is_distribution ? distribution.mean : value;
    }
};

NodeValue lookup(const std::map<std::string, NodeValue>& computed,
                 const std::map<std::string, Eigen::VectorXd>& sources,
                 const std::string& label) {
    auto it = computed.find(label);
    if (it != computed.end()) return it->second;
    auto src = sources.find(label);
    if (src == sources.end())
        throw StructuralError("no value supplied for source node '" + label +
                              "'");
    NodeValue v;
    v.value = src->second;
    return v;
}

std::vector<double> point_knots(const MethodSpec& method) {
    std::vector<double> knots;
    for (const InfoComponent& c : method.components) {
        if (c.from_parent)
            throw UnsupportedError(
                "conjugate-Gaussian nodes consume point-evaluation "
                "fragments, not parent outputs");
        for (const Functional& f : c.functionals) {
            if (f.kind != Functional::Kind::PointEval)
                throw UnsupportedError(
                    "conjugate-Gaussian nodes accept point evaluations only");
            knots.push_back(f.t.t1);
        }
    }
    return knots;
}

Eigen::VectorXd concat(const std::vector<NodeValue>& values) {
    int total = 0;
    for (const NodeValue& v : values) total += v.dim();
    Eigen::VectorXd out(total);
    int at = 0;
    for (const NodeValue& v : values) {
        out.segment(at, v.dim()) = v.mean();
        at += v.dim();
    }
    return out;
}

GaussianPosterior conjugate_posterior(const MethodSpec& method,
                                      const std::vector<NodeValue>& inputs) {
    for (const NodeValue& v : inputs)
        if (v.is_distribution)
            throw ModeError(
                "analytic-Gaussian mode cannot feed a distribution into a "
                "conjugate-Gaussian node; run the pipeline in ancestral "
                "mode");
    return bq_posterior(method.kernel, point_knots(method), concat(inputs),
                        method.qoi_interval);
}

NodeValue combine_sum(const std::vector<NodeValue>& inputs) {
    int dim = inputs.front().dim();
    for (const NodeValue& v : inputs)
        if (v.dim() != dim)
            throw StructuralError("sum combiner inputs differ in dimension");
    bool any_dist = false;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
    for (const NodeValue& v : inputs) {
        mean += v.mean();
        if (v.is_distribution) {
            any_dist = true;
            cov += v.distribution.covariance;
        }
    }
    NodeValue out;
    if (any_dist) {
        out.is_distribution = true;
        out.distribution = GaussianPosterior{mean, cov};
    } else {
        out.value = mean;
    }
    return out;
}

std::uint64_t mix_seed(std::uint64_t seed, int method, std::uint64_t path) {
    // splitmix-style mixing so nested sampler runs get distinct seeds
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (path + 1) +
                      0xbf58476d1ce4e5b9ull * static_cast<std::uint64_t>(method);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

PipelineResult execute(const PipelineGraph& graph,
                       const std::vector<MethodSpec>& methods,
                       const std::map<std::string, Eigen::VectorXd>& sources,
                       ExecutionMode mode, std::uint64_t seed, int paths,
                       int workers) {
    graph.validate();
    if (static_cast<int>(methods.size()) != graph.methods())
        throw StructuralError("method count does not match the pipeline");
    std::vector<int> order = graph.method_order();

    if (mode == ExecutionMode::AnalyticGaussian) {
        std::map<std::string, NodeValue> computed;
        for (int label : order) {
            const MethodSpec& method = methods[label - 1];
            std::vector<NodeValue> inputs;
            for (const std::string& l : graph.inputs[label - 1])
                inputs.push_back(lookup(computed, sources, l));
            NodeValue out;
            switch (method.updater) {
                case UpdaterKind::ConjugateGaussian:
                    out.is_distribution = true;
                    out.distribution = conjugate_posterior(method, inputs);
                    break;
                case UpdaterKind::SumCombiner:
                    out = combine_sum(inputs);
                    break;
                case UpdaterKind::DeterministicMap: {
                    for (const NodeValue& v : inputs)
                        if (v.is_distribution)
                            throw ModeError(
                                "analytic-Gaussian mode cannot push a "
                                "distribution through a deterministic map; "
                                "run the pipeline in ancestral mode");
                    std::vector<Eigen::VectorXd> args;
                    for (const NodeValue& v : inputs) args.push_back(v.value);
                    out.value = method.map(args);
                    break;
                }
                case UpdaterKind::Disintegration:
                    throw ModeError(
                        "disintegration nodes have no analytic-Gaussian "
                        "update; run the pipeline in ancestral mode");
            }
            computed[graph.outputs[label - 1]] = std::move(out);
        }
        NodeValue terminal = computed.at(graph.terminal());
        PipelineResult result;
        if (terminal.is_distribution) {
            result.terminal = terminal.distribution;
        } else {
            result.terminal.mean = terminal.value;
            result.terminal.covariance = Eigen::MatrixXd::Zero(
                terminal.value.size(), terminal.value.size());
        }
        return result;
    }

    if (paths < 1) throw RangeError("ancestral mode needs paths >= 1");
    // conjugate-Gaussian nodes never consume parent outputs, so their
    // posteriors do not vary across paths and are computed once
    std::map<int, GaussianPosterior> conjugate_cache;
    for (int label : order) {
        const MethodSpec& method = methods[label - 1];
        if (method.updater != UpdaterKind::ConjugateGaussian) continue;
        std::vector<NodeValue> inputs;
        for (const std::string& l : graph.inputs[label - 1])
            inputs.push_back(lookup({}, sources, l));
        conjugate_cache[label] = conjugate_posterior(method, inputs);
    }

    int qdim = methods[order.back() - 1].qoi_dimension();
    if (qdim < 1)
        throw StructuralError("terminal method has no declared QoI dimension");
    Eigen::MatrixXd samples(paths, qdim);
    parallel_for(paths, workers, [&](std::size_t p) {
        std::map<std::string, NodeValue> computed;
        for (int label : order) {
            const MethodSpec& method = methods[label - 1];
            std::vector<NodeValue> inputs;
            for (const std::string& l : graph.inputs[label - 1])
                inputs.push_back(lookup(computed, sources, l));
            NodeValue out;
            switch (method.updater) {
                case UpdaterKind::ConjugateGaussian: {
                    const GaussianPosterior& post = conjugate_cache.at(label);
                    RngStream stream(seed, StreamPurpose::Ancestral,
                                     static_cast<std::uint32_t>(label), p);
                    out.value.resize(1);
                    out.value[0] =
                        post.scalar_mean() +
                        std::sqrt(std::max(0.0, post.scalar_variance())) *
                            stream.normal();
                    break;
                }
                case UpdaterKind::SumCombiner:
                    out = combine_sum(inputs);
                    break;
                case UpdaterKind::DeterministicMap: {
                    std::vector<Eigen::VectorXd> args;
                    for (const NodeValue& v : inputs) args.push_back(v.value);
                    out.value = method.map(args);
                    break;
                }
                case UpdaterKind::Disintegration: {
                    const MethodSpec& m = method;
                    if (!m.disintegration)
                        throw StructuralError(
                            "disintegration node lacks sampler settings");
                    const DisintegrationSettings& set = *m.disintegration;
                    InformationOperator op;
                    for (const InfoComponent& c : m.components) {
                        if (c.from_parent)
                            throw UnsupportedError(
                                "disintegration nodes condition on "
                                "operator fragments, not parent outputs");
                        op.functionals.insert(op.functionals.end(),
                                              c.functionals.begin(),
                                              c.functionals.end());
                    }
                    op.observed = concat(inputs);
                    RngStream stream(seed, StreamPurpose::Ancestral,
                                     static_cast<std::uint32_t>(label), p);
                    SmcResult smc = smc_nd(*set.prior, op, set.phi,
                                           set.schedule, set.particles,
                                           set.mala,
                                           mix_seed(seed, label, p));
                    if (smc.history.failed)
                        throw SamplerError("ancestral disintegration failed",
                                           smc.history.failure_rung);
                    int pick = static_cast<int>(
                        stream.below(static_cast<std::uint64_t>(
                            set.particles)));
                    SeriesState state = set.prior->make_state(
                        smc.ensemble.states.row(pick).transpose());
                    out.value.resize(set.qoi.size());
                    for (std::size_t q = 0; q < set.qoi.size(); ++q)
                        out.value[q] = eval_functional(set.qoi[q], state);
                    break;
                }
            }
            computed[graph.outputs[label - 1]] = std::move(out);
        }
        samples.row(p) = computed.at(graph.terminal()).mean().transpose();
    });

    PipelineResult result;
    result.samples = samples;
    result.terminal.mean = samples.colwise().mean();
    Eigen::MatrixXd centered =
        samples.rowwise() - result.terminal.mean.transpose();
    result.terminal.covariance =
        centered.transpose() * centered / std::max(1, paths - 1);
    return result;
}

DistributedIntegrationDemo distributed_integration_demo(
    const KernelSpec& kernel, int m,
    const std::function<double(double)>& data) {
    if (m < 2) throw RangeError("distributed integration needs m >= 2");
    DistributedIntegrationDemo demo;
    auto knot = [&](int i) { return i / (2.0 * m); };

    std::vector<Functional> left, mid, right;
    Eigen::VectorXd left_v(m - 1), mid_v(1), right_v(m);
    for (int i = 1; i < m; ++i) {
        left.push_back(Functional::point_eval(Point{knot(i), 0.0}));
        left_v[i - 1] = data(knot(i));
    }
    mid.push_back(Functional::point_eval(Point{knot(m), 0.0}));
    mid_v[0] = data(knot(m));
    for (int i = m + 1; i <= 2 * m; ++i) {
        right.push_back(Functional::point_eval(Point{knot(i), 0.0}));
        right_v[i - m - 1] = data(knot(i));
    }

    demo.graph.inputs = {{"left-knots", "midpoint"},
                         {"midpoint", "right-knots"},
                         {"left-integral", "right-integral"}};
    demo.graph.outputs = {"left-integral", "right-integral", "integral"};

    MethodSpec m1;
    m1.updater = UpdaterKind::ConjugateGaussian;
    m1.kernel = kernel;
    m1.qoi_interval = Interval{0.0, 0.5};
    m1.components = {InfoComponent::fragment(left),
                     InfoComponent::fragment(mid)};
    MethodSpec m2;
    m2.updater = UpdaterKind::ConjugateGaussian;
    m2.kernel = kernel;
    m2.qoi_interval = Interval{0.5, 1.0};
    m2.components = {InfoComponent::fragment(mid),
                     InfoComponent::fragment(right)};
    MethodSpec m3;
    m3.updater = UpdaterKind::SumCombiner;
    m3.components = {InfoComponent::parent_slot(1),
                     InfoComponent::parent_slot(1)};
    demo.methods = {m1, m2, m3};

    demo.sources = {{"left-knots", left_v},
                    {"midpoint", mid_v},
                    {"right-knots", right_v}};
    demo.dimensions = {m - 1, 1, m, 1, 1, 1};

    // joint covariance of the knot blocks and the three integrals
    std::vector<double> ts;
    for (int i = 1; i <= 2 * m; ++i) ts.push_back(knot(i));
    std::vector<Interval> intervals = {{0.0, 0.5}, {0.5, 1.0}, {0.0, 1.0}};
    int nk = 2 * m;
    demo.witness.resize(nk + 3, nk + 3);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nk; ++j)
            demo.witness(i, j) = kernel_value(kernel, ts[i], ts[j]);
    for (int i = 0; i < nk; ++i)
        for (int c = 0; c < 3; ++c) {
            double cov = kernel_interval_cov(kernel, ts[i], intervals[c]);
            demo.witness(i, nk + c) = cov;
            demo.witness(nk + c, i) = cov;
        }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            demo.witness(nk + a, nk + b) = kernel_interval_interval_cov(
                kernel, intervals[a], intervals[b]);

    demo.all_knots = ts;
    demo.all_values.resize(nk);
    for (int i = 0; i < nk; ++i) demo.all_values[i] = data(ts[i]);
    return demo;
}

}  // namespace bpnm
