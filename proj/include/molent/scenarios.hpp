#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "molent/integrator.hpp"
#include "molent/liouvillian.hpp"
#include "molent/qcore.hpp"

namespace molent {

enum class Observable {
    rho11,
    rho22,
    rho33,
    rho44,
    rho_aa,
    rho_ss,
    rho_pp,
    rho_qq,
    rho_ff,
    rho_kk,
    re_rho23,
    C,
};

std::string_view observable_name(Observable o);
Observable parse_observable(std::string_view name);
std::span<const Observable> all_observables();

/// Value of `o` for a physical state. Populations are clamped (see population()).
double evaluate(Observable o, const DensityMatrix& rho);

/// Same, but never throws on unphysical input: populations are unclamped and
/// C is NaN when the concurrence spectrum is unphysical.
double evaluate_lenient(Observable o, const DensityMatrix& rho);

/// Extra sampling window, merged with the uniform grid.
struct ZoomWindow {
    double start = 0.0;
    double end = 0.0;
    std::size_t samples = 0;
};

enum class ScenarioKind { trajectory, zeno };

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::trajectory;
    std::string initial;  // named_state() key
    SystemParams params;
    double horizon = 0.0;  // seconds
    std::vector<Observable> observables;
    /// Fixed switch-off instant (s). Mutually exclusive with the trigger below.
    std::optional<double> field_off_time;
    /// Switch the field off at the first maximum of rho_ss.
    bool field_off_at_first_ss_max = false;
    std::size_t samples = 2001;  // uniform grid over [0, horizon]
    std::optional<ZoomWindow> zoom;
    std::string figure;  // plot id, empty when none

    // zeno kind only
    std::vector<double> zeno_taus;
    double zeno_total_time = 0.0;

    bool has_field_off() const { return field_off_time.has_value() || field_off_at_first_ss_max; }
    PureState initial_state() const { return named_state(initial); }

    /// Throws InvalidArgument on an inconsistent preset.
    void validate() const;
};

/// All presets in a fixed order.
const std::vector<Scenario>& catalog();

/// Throws InvalidArgument listing the preset names when `name` is unknown.
const Scenario& find_scenario(std::string_view name);

/// Sets one of omega0, delta_l, J, Omega, gamma, horizon, samples. Throws on unknown names.
void apply_parameter(Scenario& s, std::string_view param, double value);

struct ObservableTable {
    std::vector<Observable> columns;
    std::vector<double> times;
    std::vector<std::vector<double>> rows;  // rows[i][j] = columns[j] at times[i]
    std::vector<DensityMatrix> states;
    std::optional<double> field_off_time;
    IntegrationStats meta;
    RhsVariant variant = RhsVariant::derived;

    /// Column as a series. Throws InvalidArgument when not present.
    std::vector<double> column(Observable o) const;
};

/// Sample grid of the scenario: uniform plus zoom, sorted, duplicates removed.
std::vector<double> scenario_times(const Scenario& s);

/// Integrates the scenario (and splits at switch-off). `config.sample_times`
/// overrides the scenario grid when non-empty. The published variant is run
/// without invariant checks and evaluated leniently.
ObservableTable run_scenario(const Scenario& s, const IntegrationConfig& config,
                             RhsVariant variant = RhsVariant::derived);

/// Runs several scenarios on up to `jobs` threads; results keep input order.
std::vector<ObservableTable> run_scenarios(std::span<const Scenario> scenarios,
                                           const IntegrationConfig& config, RhsVariant variant,
                                           std::size_t jobs);

struct Extremum {
    double t;
    double value;
};

/// First local maximum by three-point comparison, refined by the vertex of the
/// parabola through the neighbours. A maximum at index 0 (series starting
/// downwards) is returned as is. std::nullopt if no maximum is found.
std::optional<Extremum> try_first_maximum(std::span<const double> t, std::span<const double> v);

/// As above but throws InvalidArgument for empty, constant or monotone series.
Extremum find_first_maximum(std::span<const double> t, std::span<const double> v);

/// Entangled-basis content of the state at a concurrence maximum.
struct ConcurrenceMaximum {
    double t;
    double C;
    /// Amplitudes on (p, s, a, q), phase referenced to the largest one.
    std::array<cplx, 4> amplitudes;
    std::array<double, 4> populations;
};

/// Interior local maxima of C along the table (requires the C column).
std::vector<ConcurrenceMaximum> concurrence_maxima(const ObservableTable& table);

}  // namespace molent
