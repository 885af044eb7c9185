#include "hotstove/config_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <utility>
#include <vector>

namespace hotstove {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

const json& require_object(const json& value, const std::string& path) {
    if (!value.is_object()) throw ConfigError(path, "expected an object");
    return value;
}

const json& require_field(const json& obj, const std::string& key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
    return *it;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError(join(path, key), "unknown field");
    }
}

double get_double(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require_field(obj, key, path);
    if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
    return v.get<double>();
}

std::int64_t get_int(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require_field(obj, key, path);
    if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
    return v.get<std::int64_t>();
}

std::int32_t get_int32(const json& obj, const std::string& key, const std::string& path) {
    const std::int64_t v = get_int(obj, key, path);
    if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(join(path, key), "integer out of range");
    return static_cast<std::int32_t>(v);
}

std::string get_type(const json& obj, const std::string& path) {
    const json& v = require_field(obj, "type", path);
    if (!v.is_string()) throw ConfigError(join(path, "type"), "expected a string");
    return v.get<std::string>();
}

// Domain factories validate their own arguments; surface those rejections
// under the field path of the enclosing object.
template <typename F>
auto with_path(const std::string& path, F&& make) {
    try {
        return make();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

PayoffDistribution parse_payoff(const json& value, const std::string& path) {
    const json& obj = require_object(value, path);
    const std::string type = get_type(obj, path);
    if (type == "normal") {
        reject_unknown(obj, path, {"type", "mean", "variance"});
        const double mean = get_double(obj, "mean", path);
        const double variance = get_double(obj, "variance", path);
        return with_path(path, [&] { return PayoffDistribution::normal(mean, variance); });
    }
    if (type == "laplace") {
        reject_unknown(obj, path, {"type", "mean", "scale"});
        const double mean = get_double(obj, "mean", path);
        const double scale = get_double(obj, "scale", path);
        return with_path(path, [&] { return PayoffDistribution::laplace(mean, scale); });
    }
    if (type == "discrete_symmetric") {
        reject_unknown(obj, path, {"type", "center", "offsets"});
        const double center = get_double(obj, "center", path);
        const json& offsets = require_field(obj, "offsets", path);
        if (!offsets.is_array()) throw ConfigError(join(path, "offsets"), "expected an array");
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < offsets.size(); ++i) {
            const std::string item_path = join(path, "offsets[" + std::to_string(i) + "]");
            const json& item = require_object(offsets[i], item_path);
            reject_unknown(item, item_path, {"offset", "prob"});
            pairs.emplace_back(get_double(item, "offset", item_path),
                               get_double(item, "prob", item_path));
        }
        return with_path(path,
                         [&] { return PayoffDistribution::discrete_symmetric(center, pairs); });
    }
    if (type == "finite_discrete") {
        reject_unknown(obj, path, {"type", "support"});
        const json& support = require_field(obj, "support", path);
        if (!support.is_array()) throw ConfigError(join(path, "support"), "expected an array");
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < support.size(); ++i) {
            const std::string item_path = join(path, "support[" + std::to_string(i) + "]");
            const json& item = require_object(support[i], item_path);
            reject_unknown(item, item_path, {"value", "prob"});
            pairs.emplace_back(get_double(item, "value", item_path),
                               get_double(item, "prob", item_path));
        }
        return with_path(path, [&] { return PayoffDistribution::finite_discrete(pairs); });
    }
    throw ConfigError(join(path, "type"),
                      "unknown payoff type (normal | laplace | discrete_symmetric | "
                      "finite_discrete)");
}

EnvironmentSpec parse_environment(const json& value, const std::string& path) {
    const json& obj = require_object(value, path);
    const std::string type = get_type(obj, path);
    if (type == "fixed_mean") {
        reject_unknown(obj, path, {"type", "payoff"});
        return EnvironmentSpec::fixed_mean(
            parse_payoff(require_field(obj, "payoff", path), join(path, "payoff")));
    }
    if (type == "hierarchical_normal") {
        reject_unknown(obj, path, {"type", "prior_mean", "prior_variance", "noise_variance"});
        const double m = get_double(obj, "prior_mean", path);
        const double vu = get_double(obj, "prior_variance", path);
        const double ve = get_double(obj, "noise_variance", path);
        return with_path(path, [&] { return EnvironmentSpec::hierarchical_normal(m, vu, ve); });
    }
    throw ConfigError(join(path, "type"),
                      "unknown environment type (fixed_mean | hierarchical_normal)");
}

Learner parse_learner(const json& value, const std::string& path) {
    const json& obj = require_object(value, path);
    const std::string type = get_type(obj, path);
    if (type == "averaging") {
        reject_unknown(obj, path, {"type"});
        return Learner::averaging();
    }
    if (type == "recency") {
        reject_unknown(obj, path, {"type", "weight", "initial_belief"});
        const double weight = get_double(obj, "weight", path);
        const double z0 = get_double(obj, "initial_belief", path);
        return with_path(path, [&] { return Learner::recency(weight, z0); });
    }
    if (type == "bayes") {
        reject_unknown(obj, path, {"type", "prior_mean", "prior_variance", "noise_variance"});
        const double m = get_double(obj, "prior_mean", path);
        const double vu = get_double(obj, "prior_variance", path);
        const double ve = get_double(obj, "noise_variance", path);
        return with_path(path, [&] { return Learner::bayes(m, vu, ve); });
    }
    throw ConfigError(join(path, "type"), "unknown learner type (averaging | recency | bayes)");
}

SamplingPolicy parse_policy(const json& value, const std::string& path) {
    const json& obj = require_object(value, path);
    const std::string type = get_type(obj, path);
    if (type == "step") {
        reject_unknown(obj, path, {"type", "threshold", "high", "low"});
        const double threshold = get_double(obj, "threshold", path);
        const std::int32_t high = get_int32(obj, "high", path);
        const std::int32_t low = get_int32(obj, "low", path);
        return with_path(path, [&] { return SamplingPolicy::step(threshold, high, low); });
    }
    if (type == "affine") {
        reject_unknown(obj, path, {"type", "base", "slope"});
        const double base = get_double(obj, "base", path);
        const double slope = get_double(obj, "slope", path);
        return with_path(path, [&] { return SamplingPolicy::affine(base, slope); });
    }
    if (type == "constant") {
        reject_unknown(obj, path, {"type", "n"});
        const std::int32_t n = get_int32(obj, "n", path);
        return with_path(path, [&] { return SamplingPolicy::constant(n); });
    }
    throw ConfigError(join(path, "type"), "unknown policy type (step | affine | constant)");
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& root, const std::string& fallback_id) {
    const json& obj = require_object(root, "");
    reject_unknown(obj, "",
                   {"id", "environment", "learner", "policy", "k", "trials", "seed", "histogram"});

    std::string id = fallback_id;
    if (const auto it = obj.find("id"); it != obj.end()) {
        if (!it->is_string()) throw ConfigError("id", "expected a string");
        id = it->get<std::string>();
    }

    ExperimentConfig config{
        std::move(id),
        parse_environment(require_field(obj, "environment", ""), "environment"),
        parse_learner(require_field(obj, "learner", ""), "learner"),
        parse_policy(require_field(obj, "policy", ""), "policy"),
        1,
        1,
        0,
        std::nullopt,
    };

    config.k = get_int32(obj, "k", "");
    if (config.k < 1) throw ConfigError("k", "must be >= 1");
    config.trials = get_int(obj, "trials", "");
    if (config.trials < 1) throw ConfigError("trials", "must be >= 1");

    const json& seed = require_field(obj, "seed", "");
    if (!seed.is_number_integer()) throw ConfigError("seed", "expected an integer");
    if (seed.is_number_unsigned()) {
        config.seed = seed.get<std::uint64_t>();
    } else {
        const std::int64_t signed_seed = seed.get<std::int64_t>();
        if (signed_seed < 0) throw ConfigError("seed", "must be >= 0");
        config.seed = static_cast<std::uint64_t>(signed_seed);
    }

    if (const auto it = obj.find("histogram"); it != obj.end()) {
        const json& h = require_object(*it, "histogram");
        reject_unknown(h, "histogram", {"bins", "min", "max"});
        HistogramSpec spec;
        spec.bins = get_int32(h, "bins", "histogram");
        spec.min = get_double(h, "min", "histogram");
        spec.max = get_double(h, "max", "histogram");
        if (spec.bins < 2) throw ConfigError("histogram.bins", "must be >= 2");
        if (!(spec.min < spec.max)) throw ConfigError("histogram.min", "must be < histogram.max");
        config.histogram = spec;
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) throw ConfigError("", "cannot open config file: " + file_path);
    json root;
    try {
        in >> root;
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_experiment_config(root, std::filesystem::path(file_path).stem().string());
}

namespace {

json payoff_to_json(const PayoffDistribution& payoff) {
    if (const auto* n = std::get_if<NormalPayoff>(&payoff.value())) {
        return {{"type", "normal"}, {"mean", n->mean}, {"variance", n->variance}};
    }
    if (const auto* l = std::get_if<LaplacePayoff>(&payoff.value())) {
        return {{"type", "laplace"}, {"mean", l->mean}, {"scale", l->scale}};
    }
    if (const auto* d = std::get_if<DiscreteSymmetricPayoff>(&payoff.value())) {
        json offsets = json::array();
        for (const auto& [offset, prob] : d->offsets)
            offsets.push_back({{"offset", offset}, {"prob", prob}});
        return {{"type", "discrete_symmetric"}, {"center", d->center}, {"offsets", offsets}};
    }
    const auto& f = std::get<FiniteDiscretePayoff>(payoff.value());
    json support = json::array();
    for (const auto& [value, prob] : f.support)
        support.push_back({{"value", value}, {"prob", prob}});
    return {{"type", "finite_discrete"}, {"support", support}};
}

}  // namespace

json experiment_config_to_json(const ExperimentConfig& config) {
    json root;
    root["id"] = config.id;

    if (const auto* h = config.environment.as_hierarchical()) {
        root["environment"] = {{"type", "hierarchical_normal"},
                               {"prior_mean", h->prior_mean},
                               {"prior_variance", h->prior_variance},
                               {"noise_variance", h->noise_variance}};
    } else {
        root["environment"] = {{"type", "fixed_mean"},
                               {"payoff", payoff_to_json(config.environment.as_fixed_mean()->payoff)}};
    }

    if (config.learner.as_averaging() != nullptr) {
        root["learner"] = {{"type", "averaging"}};
    } else if (const auto* r = config.learner.as_recency()) {
        root["learner"] = {{"type", "recency"},
                           {"weight", r->weight},
                           {"initial_belief", r->initial_belief}};
    } else {
        const auto* b = config.learner.as_bayes();
        root["learner"] = {{"type", "bayes"},
                           {"prior_mean", b->prior_mean},
                           {"prior_variance", b->prior_variance},
                           {"noise_variance", b->noise_variance}};
    }

    if (const auto* s = config.policy.as_step()) {
        root["policy"] = {{"type", "step"},
                          {"threshold", s->threshold},
                          {"high", s->high},
                          {"low", s->low}};
    } else if (const auto* a = config.policy.as_affine()) {
        root["policy"] = {{"type", "affine"}, {"base", a->base}, {"slope", a->slope}};
    } else {
        root["policy"] = {{"type", "constant"}, {"n", config.policy.as_constant()->n}};
    }

    root["k"] = config.k;
    root["trials"] = config.trials;
    root["seed"] = config.seed;
    if (config.histogram) {
        root["histogram"] = {{"bins", config.histogram->bins},
                             {"min", config.histogram->min},
                             {"max", config.histogram->max}};
    }
    return root;
}

json manifest_to_json(const RunManifest& manifest) {
    return {{"version", manifest.version},
            {"backend", manifest.backend},
            {"seed", manifest.seed},
            {"duration_seconds", manifest.duration_seconds},
            {"config", manifest.config_echo}};
}

std::string manifest_csv_comment(const RunManifest& manifest) {
    std::string out;
    out += "# hotstove " + manifest.version + "\n";
    out += "# backend: " + manifest.backend + "\n";
    out += "# seed: " + std::to_string(manifest.seed) + "\n";
    out += "# duration_seconds: " + format_double(manifest.duration_seconds) + "\n";
    out += "# config: " + manifest.config_echo.dump() + "\n";
    return out;
}

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

}  // namespace hotstove
