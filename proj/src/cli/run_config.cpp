#include "molent/cli/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "molent/cli/units.hpp"
#include "molent/error.hpp"

namespace molent::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InvalidArgument(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw InvalidArgument(where + ": unknown field '" + key + "'");
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw InvalidArgument(where + "." + key + ": " + e.what());
    }
}

json params_json(const SystemParams& p) {
    return json{{"omega0", p.omega0}, {"delta_l", p.delta_l}, {"J", p.J},
                {"Omega", p.Omega},   {"gamma", p.gamma},     {"driven", p.driven}};
}

SystemParams params_from(const json& j) {
    const std::string w = "custom.params";
    reject_unknown(j, {"omega0", "delta_l", "J", "Omega", "gamma", "driven"}, w);
    SystemParams p;
    p.omega0 = get<double>(j, "omega0", w);
    p.delta_l = get<double>(j, "delta_l", w);
    p.J = get<double>(j, "J", w);
    p.Omega = get<double>(j, "Omega", w);
    p.gamma = get<double>(j, "gamma", w);
    p.driven = get<bool>(j, "driven", w);
    return p;
}

}  // namespace

void RunConfig::validate() const {
    if (schema_version != kSchemaVersion)
        throw InvalidArgument("schema_version " + std::to_string(schema_version) + " is not supported (expected " +
                              std::to_string(kSchemaVersion) + ")");
    if (scenario.has_value() == custom.has_value())
        throw InvalidArgument("exactly one of scenario or custom must be given");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-2) || !(abs_tol > 0.0 && abs_tol <= 1e-2))
        throw InvalidArgument("tolerances must lie in (0, 1e-2]");
    if (jobs < 1) throw InvalidArgument("jobs must be >= 1");
    if (max_steps < 1) throw InvalidArgument("max_steps must be >= 1");
    if (output.empty()) throw InvalidArgument("empty output path");
    if (sweep && sweep->values.empty()) throw InvalidArgument("sweep has no values");
    (void)resolve_scenario(*this);
}

std::string to_json(const RunConfig& c) {
    json j;
    j["schema_version"] = c.schema_version;
    if (c.scenario) j["scenario"] = *c.scenario;
    if (c.custom)
        j["custom"] = json{{"initial", c.custom->initial},
                           {"params", params_json(c.custom->params)},
                           {"horizon", c.custom->horizon},
                           {"samples", c.custom->samples}};
    j["overrides"] = c.overrides;
    j["integration"] = json{{"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol}, {"max_steps", c.max_steps}};
    j["output"] = c.output;
    j["observables"] = c.observables;
    j["rhs"] = std::string(variant_name(c.rhs));
    if (c.sweep) j["sweep"] = json{{"param", c.sweep->param}, {"values", c.sweep->values}};
    j["jobs"] = c.jobs;
    return j.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("run config: ") + e.what());
    }
    const std::string w = "run config";
    reject_unknown(j, {"schema_version", "scenario", "custom", "overrides", "integration", "output",
                       "observables", "rhs", "sweep", "jobs"},
                   w);
    if (!j.contains("schema_version")) throw InvalidArgument("run config: missing schema_version");

    RunConfig c;
    c.schema_version = get<int>(j, "schema_version", w);
    if (c.schema_version != kSchemaVersion)
        throw InvalidArgument("run config: unsupported schema_version " + std::to_string(c.schema_version));
    if (j.contains("scenario")) c.scenario = get<std::string>(j, "scenario", w);
    if (j.contains("custom")) {
        const json& cj = j["custom"];
        reject_unknown(cj, {"initial", "params", "horizon", "samples"}, "custom");
        CustomSpec cs;
        cs.initial = get<std::string>(cj, "initial", "custom");
        cs.params = params_from(cj.at("params"));
        cs.horizon = get<double>(cj, "horizon", "custom");
        if (cj.contains("samples")) cs.samples = get<std::size_t>(cj, "samples", "custom");
        c.custom = cs;
    }
    if (j.contains("overrides")) c.overrides = get<std::map<std::string, double>>(j, "overrides", w);
    if (j.contains("integration")) {
        const json& ij = j["integration"];
        reject_unknown(ij, {"rel_tol", "abs_tol", "max_steps"}, "integration");
        if (ij.contains("rel_tol")) c.rel_tol = get<double>(ij, "rel_tol", "integration");
        if (ij.contains("abs_tol")) c.abs_tol = get<double>(ij, "abs_tol", "integration");
        if (ij.contains("max_steps")) c.max_steps = get<std::size_t>(ij, "max_steps", "integration");
    }
    if (j.contains("output")) c.output = get<std::string>(j, "output", w);
    if (j.contains("observables")) c.observables = get<std::vector<std::string>>(j, "observables", w);
    if (j.contains("rhs")) c.rhs = parse_variant(get<std::string>(j, "rhs", w));
    if (j.contains("sweep")) {
        const json& sj = j["sweep"];
        reject_unknown(sj, {"param", "values"}, "sweep");
        c.sweep = SweepSpec{get<std::string>(sj, "param", "sweep"), get<std::vector<double>>(sj, "values", "sweep")};
    }
    if (j.contains("jobs")) c.jobs = get<std::size_t>(j, "jobs", w);
    c.validate();
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_config_from_json(ss.str());
}

void save_run_config(const RunConfig& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << to_json(c);
    if (!out) throw IoError("write failed: " + path);
}

Scenario resolve_scenario(const RunConfig& c) {
    Scenario s;
    if (c.scenario) {
        s = find_scenario(*c.scenario);
    } else if (c.custom) {
        s.name = "custom";
        s.initial = c.custom->initial;
        s.params = c.custom->params;
        s.horizon = c.custom->horizon;
        s.samples = c.custom->samples;
        s.observables.assign(all_observables().begin(), all_observables().end());
        if (c.custom->params.driven) {
            std::erase(s.observables, Observable::rho_pp);
            std::erase(s.observables, Observable::rho_qq);
        }
    } else {
        throw InvalidArgument("exactly one of scenario or custom must be given");
    }
    for (const auto& [name, value] : c.overrides) apply_parameter(s, name, value);
    if (!c.observables.empty()) {
        s.observables.clear();
        for (const auto& o : c.observables) s.observables.push_back(parse_observable(o));
    }
    s.validate();
    return s;
}

SweepSpec parse_sweep(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw InvalidArgument("sweep must look like param=v1,v2,...: '" + text + "'");
    SweepSpec s;
    s.param = text.substr(0, eq);
    const Dimension dim = s.param == "horizon" || s.param == "tau" ? Dimension::time : Dimension::rate;
    std::stringstream rest(text.substr(eq + 1));
    std::string item;
    while (std::getline(rest, item, ','))
        if (!item.empty()) s.values.push_back(parse_quantity(item, dim));
    if (s.values.empty()) throw InvalidArgument("sweep has no values: '" + text + "'");
    return s;
}

}  // namespace molent::cli
