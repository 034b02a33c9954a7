#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molent/liouvillian.hpp"
#include "molent/qcore.hpp"
#include "molent/scenarios.hpp"

namespace molent::cli {

inline constexpr int kSchemaVersion = 1;

struct CustomSpec {
    std::string initial;
    SystemParams params;
    double horizon = 0.0;
    std::size_t samples = 2001;
    bool operator==(const CustomSpec&) const = default;
};

struct SweepSpec {
    std::string param;
    std::vector<double> values;
    bool operator==(const SweepSpec&) const = default;
};

struct RunConfig {
    int schema_version = kSchemaVersion;
    std::optional<std::string> scenario;  // exactly one of scenario / custom
    std::optional<CustomSpec> custom;
    std::map<std::string, double> overrides;  // apply_parameter() names
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    std::size_t max_steps = 20'000'000;  // accepted-step budget per integration
    std::string output = "-";  // "-" is stdout
    std::vector<std::string> observables;  // empty: scenario default
    RhsVariant rhs = RhsVariant::derived;
    std::optional<SweepSpec> sweep;
    std::size_t jobs = 1;

    bool operator==(const RunConfig&) const = default;

    /// Throws InvalidArgument when inconsistent.
    void validate() const;
};

std::string to_json(const RunConfig& c);
/// Rejects unknown keys, a missing or different schema_version and bad types.
RunConfig run_config_from_json(const std::string& text);

RunConfig load_run_config(const std::string& path);  // IoError on read failure
void save_run_config(const RunConfig& c, const std::string& path);

/// Scenario described by the config with overrides and observables applied.
Scenario resolve_scenario(const RunConfig& c);

/// "name=v1,v2,..." with unit-aware values (time for horizon, rate otherwise).
SweepSpec parse_sweep(const std::string& text);

}  // namespace molent::cli
