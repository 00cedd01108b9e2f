#include "cascade/config.hpp"

#include "cascade/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace cascade {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw ValidationError("config: unknown field '" + key + "' in " + where);
}

MarginalSpec parse_marginal(const json& obj, const std::string& where) {
    if (!obj.is_object())
        throw ValidationError("config: " + where + " must be an object");
    if (!obj.contains("kind"))
        throw ValidationError("config: " + where + " is missing 'kind'");
    const std::string kind = obj.at("kind").get<std::string>();
    if (kind == "deterministic") {
        reject_unknown(obj, {"kind", "value"}, where);
        return MarginalSpec::deterministic(obj.at("value").get<int>());
    }
    if (kind == "uniform") {
        reject_unknown(obj, {"kind", "lo", "hi"}, where);
        return MarginalSpec::uniform(obj.at("lo").get<int>(), obj.at("hi").get<int>());
    }
    if (kind == "zipf") {
        reject_unknown(obj, {"kind", "lo", "hi", "exponent"}, where);
        return MarginalSpec::zipf(obj.at("lo").get<int>(), obj.at("hi").get<int>(),
                                  obj.at("exponent").get<double>());
    }
    throw ValidationError("config: " + where + " has unknown kind '" + kind + "'");
}

json marginal_to_json(const MarginalSpec& spec) {
    switch (spec.kind) {
        case MarginalSpec::Kind::Deterministic:
            return {{"kind", "deterministic"}, {"value", spec.value}};
        case MarginalSpec::Kind::Uniform:
            return {{"kind", "uniform"}, {"lo", spec.lo}, {"hi", spec.hi}};
        case MarginalSpec::Kind::Zipf:
            return {{"kind", "zipf"}, {"lo", spec.lo}, {"hi", spec.hi},
                    {"exponent", spec.exponent}};
    }
    throw ValidationError("config: unserializable marginal kind");
}

} // namespace

void ExperimentConfig::validate() const {
    if (n < 1)
        throw ValidationError("config: n must be >= 1");
    epidemic().validate();
    make_marginal_pmf(in_spec);  // family-specific range checks
    make_marginal_pmf(out_spec);
    if (!(dt > 0.0))
        throw ValidationError("config: dt must be > 0");
    if (replicas < 1)
        throw ValidationError("config: replicas must be >= 1");
    if (grid_points < 2)
        throw ValidationError("config: grid_points must be >= 2");
}

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("config: top level must be an object");
    reject_unknown(doc,
                   {"n", "in_degree", "out_degree", "lambda", "nu", "init_frac",
                    "t_max", "dt", "replicas", "grid_points", "seed"},
                   "top level");

    ExperimentConfig cfg;
    try {
        cfg.n = doc.at("n").get<std::size_t>();
        cfg.in_spec = parse_marginal(doc.at("in_degree"), "in_degree");
        cfg.out_spec = parse_marginal(doc.at("out_degree"), "out_degree");
        cfg.lambda = doc.at("lambda").get<double>();
        cfg.nu = doc.at("nu").get<double>();
        cfg.init_frac = doc.at("init_frac").get<double>();
        cfg.t_max = doc.at("t_max").get<double>();
        if (doc.contains("dt")) cfg.dt = doc.at("dt").get<double>();
        if (doc.contains("replicas")) cfg.replicas = doc.at("replicas").get<std::size_t>();
        if (doc.contains("grid_points"))
            cfg.grid_points = doc.at("grid_points").get<std::size_t>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ValidationError("config: cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json doc{{"n", cfg.n},
             {"in_degree", marginal_to_json(cfg.in_spec)},
             {"out_degree", marginal_to_json(cfg.out_spec)},
             {"lambda", cfg.lambda},
             {"nu", cfg.nu},
             {"init_frac", cfg.init_frac},
             {"t_max", cfg.t_max},
             {"dt", cfg.dt},
             {"replicas", cfg.replicas},
             {"grid_points", cfg.grid_points},
             {"seed", cfg.seed}};
    return doc.dump(2) + "\n";
}

} // namespace cascade
