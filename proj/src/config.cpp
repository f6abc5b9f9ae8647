#include "bpnm/config.hpp"

#include <array>
#include <fstream>
#include <initializer_list>
#include <utility>

#include "json.hpp"

#include "bpnm/errors.hpp"

namespace bpnm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) {
    throw ConfigError(message);
}

constexpr std::array<std::pair<ExperimentKind, const char*>, 6> kExperiments =
    {{{ExperimentKind::Quadrature, "quadrature"},
      {ExperimentKind::Poisson, "poisson"},
      {ExperimentKind::Painleve, "painleve"},
      {ExperimentKind::PipelineDemo, "pipeline-demo"},
      {ExperimentKind::Risk, "risk"},
      {ExperimentKind::Counterexample, "counterexample"}}};

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) fail("unrecognized field '" + prefix + it.key() + "'");
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

const json& require_object(const json& v, const std::string& field) {
    if (!v.is_object()) fail(field + ": expected an object");
    return v;
}

double as_number(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field + ": expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& field) {
    if (!v.is_number_integer()) fail(field + ": expected an integer");
    return v.get<int>();
}

std::uint64_t as_seed(const json& v, const std::string& field) {
    if (!v.is_number_integer() || (v.is_number_integer() &&
                                   !v.is_number_unsigned() &&
                                   v.get<long long>() < 0))
        fail(field + ": expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& field) {
    if (!v.is_string()) fail(field + ": expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& field) {
    if (!v.is_boolean()) fail(field + ": expected a boolean");
    return v.get<bool>();
}

std::vector<double> as_number_list(const json& v, const std::string& field) {
    if (!v.is_array()) fail(field + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& item : v) out.push_back(as_number(item, field));
    return out;
}

void parse_scale(const json& obj, ScaleConfig* scale) {
    check_keys(obj, "prior.scale.", {"kind", "alpha", "exponent"});
    if (const json* v = find(obj, "kind"))
        scale->kind = as_string(*v, "prior.scale.kind");
    if (const json* v = find(obj, "alpha"))
        scale->alpha = as_number(*v, "prior.scale.alpha");
    if (const json* v = find(obj, "exponent"))
        scale->exponent = as_number(*v, "prior.scale.exponent");
}

void parse_prior(const json& obj, PriorConfig* prior) {
    check_keys(obj, "prior.", {"family", "scale", "x0", "degree"});
    if (const json* v = find(obj, "family"))
        prior->family = as_string(*v, "prior.family");
    if (const json* v = find(obj, "scale"))
        parse_scale(require_object(*v, "prior.scale"), &prior->scale);
    if (const json* v = find(obj, "x0")) prior->x0 = as_number(*v, "prior.x0");
    if (const json* v = find(obj, "degree"))
        prior->degree = as_int(*v, "prior.degree");
}

void parse_information(const json& obj, InformationConfig* info) {
    check_keys(obj, "information.",
               {"n", "layout", "observed", "negative_initial_slope", "kernel"});
    if (const json* v = find(obj, "n")) info->n = as_int(*v, "information.n");
    if (const json* v = find(obj, "layout"))
        info->layout = as_string(*v, "information.layout");
    if (const json* v = find(obj, "observed"))
        info->observed = as_number_list(*v, "information.observed");
    if (const json* v = find(obj, "negative_initial_slope"))
        info->negative_initial_slope =
            as_bool(*v, "information.negative_initial_slope");
    if (const json* v = find(obj, "kernel"))
        info->kernel = as_string(*v, "information.kernel");
}

void parse_schedule(const json& obj, ScheduleConfig* schedule) {
    check_keys(obj, "sampler.schedule.", {"first", "last", "count"});
    if (const json* v = find(obj, "first"))
        schedule->first = as_number(*v, "sampler.schedule.first");
    if (const json* v = find(obj, "last"))
        schedule->last = as_number(*v, "sampler.schedule.last");
    if (const json* v = find(obj, "count"))
        schedule->count = as_int(*v, "sampler.schedule.count");
}

void parse_sampler(const json& obj, SamplerConfig* sampler) {
    check_keys(obj, "sampler.",
               {"algorithm", "schedule", "particles", "iterations", "burn_in",
                "tau0", "step_cap", "steps", "relaxation", "seed"});
    if (const json* v = find(obj, "algorithm"))
        sampler->algorithm = as_string(*v, "sampler.algorithm");
    if (const json* v = find(obj, "schedule"))
        parse_schedule(require_object(*v, "sampler.schedule"),
                       &sampler->schedule);
    if (const json* v = find(obj, "particles"))
        sampler->particles = as_int(*v, "sampler.particles");
    if (const json* v = find(obj, "iterations"))
        sampler->iterations = as_int(*v, "sampler.iterations");
    if (const json* v = find(obj, "burn_in"))
        sampler->burn_in = as_int(*v, "sampler.burn_in");
    if (const json* v = find(obj, "tau0"))
        sampler->tau0 = as_number(*v, "sampler.tau0");
    if (const json* v = find(obj, "step_cap"))
        sampler->step_cap = as_number(*v, "sampler.step_cap");
    if (const json* v = find(obj, "steps"))
        sampler->steps = as_int(*v, "sampler.steps");
    if (const json* v = find(obj, "relaxation"))
        sampler->relaxation = as_string(*v, "sampler.relaxation");
    if (const json* v = find(obj, "seed"))
        sampler->seed = as_seed(*v, "sampler.seed");
}

void parse_output(const json& obj, OutputConfig* output) {
    check_keys(obj, "output.", {"samples", "grid", "summary"});
    if (const json* v = find(obj, "samples"))
        output->samples = as_string(*v, "output.samples");
    if (const json* v = find(obj, "grid"))
        output->grid = as_string(*v, "output.grid");
    if (const json* v = find(obj, "summary"))
        output->summary = as_string(*v, "output.summary");
}

bool is_one_of(const std::string& value,
               std::initializer_list<const char*> options) {
    for (const char* option : options)
        if (value == option) return true;
    return false;
}

}  // namespace

std::string experiment_name(ExperimentKind kind) {
    for (const auto& [k, name] : kExperiments)
        if (k == kind) return name;
    throw RangeError("unknown experiment kind");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail("config '" + path + "': " + e.what());
    }
    if (!doc.is_object()) fail("config root must be a JSON object");
    check_keys(doc, "", {"schema_version", "experiment", "prior",
                         "information", "sampler", "output"});

    ExperimentConfig config;
    const json* version = find(doc, "schema_version");
    if (!version) fail("missing required field 'schema_version'");
    config.schema_version = as_int(*version, "schema_version");
    if (config.schema_version != 1)
        fail("schema_version " + std::to_string(config.schema_version) +
             " is not supported (this build reads version 1)");

    const json* experiment = find(doc, "experiment");
    if (!experiment) fail("missing required field 'experiment'");
    std::string name = as_string(*experiment, "experiment");
    bool matched = false;
    for (const auto& [kind, known] : kExperiments)
        if (name == known) {
            config.experiment = kind;
            matched = true;
            break;
        }
    if (!matched)
        fail("experiment: unknown experiment '" + name +
             "' (expected quadrature, poisson, painleve, pipeline-demo, "
             "risk or counterexample)");

    if (const json* v = find(doc, "prior"))
        parse_prior(require_object(*v, "prior"), &config.prior);
    if (const json* v = find(doc, "information"))
        parse_information(require_object(*v, "information"),
                          &config.information);
    if (const json* v = find(doc, "sampler"))
        parse_sampler(require_object(*v, "sampler"), &config.sampler);
    if (const json* v = find(doc, "output"))
        parse_output(require_object(*v, "output"), &config.output);
    return config;
}

std::vector<std::string> validate_config(const ExperimentConfig& config) {
    std::vector<std::string> errors;
    auto bad = [&errors](std::string message) {
        errors.push_back(std::move(message));
    };

    const PriorConfig& prior = config.prior;
    if (!is_one_of(prior.family, {"gaussian", "cauchy", "uniform"}))
        bad("prior.family must be gaussian, cauchy or uniform");
    if (!is_one_of(prior.scale.kind, {"power", "geometric"}))
        bad("prior.scale.kind must be power or geometric");
    if (!(prior.scale.alpha > 0.0)) bad("prior.scale.alpha must be positive");
    if (!(prior.scale.exponent > 1.0))
        bad("prior.scale.exponent must exceed 1 so the scales are summable");
    if (prior.degree < 0 || prior.degree > 64)
        bad("prior.degree must lie in [0, 64]");

    const InformationConfig& info = config.information;
    if (!is_one_of(info.layout, {"midpoints", "equispaced"}))
        bad("information.layout must be midpoints or equispaced");
    if (!is_one_of(info.kernel, {"wiener", "integrated-wiener"}))
        bad("information.kernel must be wiener or integrated-wiener");
    switch (config.experiment) {
        case ExperimentKind::Quadrature:
            if (info.n < 1) bad("information.n must be positive");
            if (static_cast<int>(info.observed.size()) != info.n)
                bad("information.observed must list exactly information.n "
                    "values");
            break;
        case ExperimentKind::Poisson:
            if (info.n != 16 && info.n != 25 && info.n != 36)
                bad("information.n must be 16, 25 or 36 for the poisson "
                    "design (interior grid side 2, 3 or 4)");
            break;
        case ExperimentKind::Painleve:
            if (info.n < 4)
                bad("information.n must be at least 4 for the painleve "
                    "operator (n = m + 2 residual points plus two boundary "
                    "values)");
            break;
        case ExperimentKind::PipelineDemo:
            if (info.n < 2)
                bad("information.n must be at least 2 (knots per half "
                    "interval)");
            break;
        case ExperimentKind::Risk:
            if (info.n < 0 || info.n > 6)
                bad("information.n must lie in [0, 6] for the risk "
                    "experiment (0 runs the zero-information rule)");
            break;
        case ExperimentKind::Counterexample:
            break;
    }

    const SamplerConfig& sampler = config.sampler;
    if (!is_one_of(sampler.algorithm, {"smc", "pt"}))
        bad("sampler.algorithm must be smc or pt");
    if (sampler.schedule.count < 1)
        bad("sampler.schedule.count must be positive");
    if (!(sampler.schedule.last > 0.0) ||
        !(sampler.schedule.first > sampler.schedule.last))
        bad("sampler.schedule violates the TemperatureSchedule invariant: "
            "bandwidths must satisfy first > last > 0 (strictly "
            "decreasing)");
    if (config.experiment == ExperimentKind::PipelineDemo) {
        // 0 paths runs the analytic mode only.
        if (sampler.particles < 0)
            bad("sampler.particles must be nonnegative");
    } else if (config.experiment == ExperimentKind::Risk) {
        if (sampler.particles < 2)
            bad("sampler.particles must be at least 2 (Monte Carlo draws)");
    } else if (sampler.particles < 1) {
        bad("sampler.particles must be positive");
    }
    if (sampler.iterations < 1) bad("sampler.iterations must be positive");
    if (sampler.burn_in < 0 || sampler.burn_in >= sampler.iterations)
        bad("sampler.burn_in must lie in [0, sampler.iterations)");
    if (!(sampler.tau0 > 0.0)) bad("sampler.tau0 must be positive");
    if (!(sampler.step_cap >= 0.0))
        bad("sampler.step_cap must be nonnegative (0 disables the cap)");
    if (sampler.steps < 1) bad("sampler.steps must be positive");
    if (!is_one_of(sampler.relaxation, {"squared-exponential", "indicator"}))
        bad("sampler.relaxation must be squared-exponential or indicator");

    if (config.output.samples.empty()) bad("output.samples must be nonempty");
    if (config.output.grid.empty()) bad("output.grid must be nonempty");
    if (config.output.summary.empty()) bad("output.summary must be nonempty");
    return errors;
}

std::string config_to_json_string(const ExperimentConfig& config) {
    json doc;
    doc["schema_version"] = config.schema_version;
    doc["experiment"] = experiment_name(config.experiment);
    doc["prior"] = {{"family", config.prior.family},
                    {"scale",
                     {{"kind", config.prior.scale.kind},
                      {"alpha", config.prior.scale.alpha},
                      {"exponent", config.prior.scale.exponent}}},
                    {"x0", config.prior.x0},
                    {"degree", config.prior.degree}};
    doc["information"] = {
        {"n", config.information.n},
        {"layout", config.information.layout},
        {"observed", config.information.observed},
        {"negative_initial_slope", config.information.negative_initial_slope},
        {"kernel", config.information.kernel}};
    doc["sampler"] = {{"algorithm", config.sampler.algorithm},
                      {"schedule",
                       {{"first", config.sampler.schedule.first},
                        {"last", config.sampler.schedule.last},
                        {"count", config.sampler.schedule.count}}},
                      {"particles", config.sampler.particles},
                      {"iterations", config.sampler.iterations},
                      {"burn_in", config.sampler.burn_in},
                      {"tau0", config.sampler.tau0},
                      {"step_cap", config.sampler.step_cap},
                      {"steps", config.sampler.steps},
                      {"relaxation", config.sampler.relaxation},
                      {"seed", config.sampler.seed}};
    doc["output"] = {{"samples", config.output.samples},
                     {"grid", config.output.grid},
                     {"summary", config.output.summary}};
    return doc.dump(2) + "\n";
}

}  // namespace bpnm
