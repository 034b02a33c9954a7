#include "molent/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "molent/entanglement.hpp"
#include "molent/error.hpp"
#include "molent/parallel.hpp"

namespace molent {
namespace {

constexpr std::array<Observable, 12> kObservables{
    Observable::rho11,  Observable::rho22,  Observable::rho33,  Observable::rho44,
    Observable::rho_aa, Observable::rho_ss, Observable::rho_pp, Observable::rho_qq,
    Observable::rho_ff, Observable::rho_kk, Observable::re_rho23, Observable::C,
};

constexpr std::array<std::string_view, 12> kObservableNames{
    "rho11", "rho22", "rho33", "rho44", "rho_aa", "rho_ss",
    "rho_pp", "rho_qq", "rho_ff", "rho_kk", "re_rho23", "C",
};

// Named state whose population the observable is, or nullptr.
const PureState* projector_state(Observable o) {
    static const std::array<PureState, 10> states{
        named_state("g1g2"), named_state("g1e2"), named_state("e1g2"), named_state("e1e2"),
        named_state("a"),    named_state("s"),    named_state("p"),    named_state("q"),
        named_state("f"),    named_state("k"),
    };
    const auto i = static_cast<std::size_t>(o);
    return i < states.size() ? &states[i] : nullptr;
}

constexpr double kOmega0 = 1.5e11;
constexpr double kJ = 4e9;
constexpr double kGamma = 1e6;

using O = Observable;

Scenario make_free(std::string name, std::string initial, std::vector<Observable> obs,
                   std::string figure) {
    Scenario s;
    s.name = std::move(name);
    s.initial = std::move(initial);
    s.params = SystemParams::free(kOmega0, kJ, kGamma);
    s.horizon = 5e-9;
    s.observables = std::move(obs);
    s.samples = 10001;  // 0.5 ps, resolves the 2 omega0 beat
    s.figure = std::move(figure);
    return s;
}

Scenario make_driven(std::string name, double delta_l, double Omega, double horizon,
                     std::vector<Observable> obs, std::string figure) {
    Scenario s;
    s.name = std::move(name);
    s.initial = "e1e2";
    s.params = SystemParams::driven_field(delta_l, kJ, Omega, kGamma, kOmega0);
    s.horizon = horizon;
    s.observables = std::move(obs);
    s.samples = 2001;
    s.figure = std::move(figure);
    return s;
}

std::vector<Scenario> build_catalog() {
    std::vector<Scenario> c;
    c.push_back(make_free("free_eg", "e1g2",
                          {O::rho11, O::rho22, O::rho33, O::rho44, O::rho_ff, O::rho_kk, O::C},
                          "fig3a"));
    c.push_back(make_free("free_LL", "L1L2",
                          {O::rho11, O::rho22, O::rho33, O::rho44, O::rho_aa, O::rho_ss, O::rho_pp,
                           O::rho_qq, O::C},
                          "fig4a"));
    c.push_back(make_free("free_LR", "L1R2",
                          {O::rho11, O::rho22, O::rho33, O::rho44, O::rho_aa, O::rho_ss, O::rho_pp,
                           O::rho_qq, O::C},
                          ""));

    const std::vector<Observable> driven_obs{O::rho11, O::rho22, O::rho33, O::rho44,
                                             O::rho_aa, O::rho_ss, O::re_rho23, O::C};
    Scenario res = make_driven("driven_resonant", 0.0, 7e7, 5e-6, driven_obs, "fig5a");
    res.zoom = ZoomWindow{0.0, 20e-9, 2001};  // 10 ps, about 25 samples per 1/J
    c.push_back(res);
    c.push_back(make_driven("driven_detuned_s", kJ, 4e7, 0.2e-6, driven_obs, "fig6a"));
    c.push_back(make_driven("driven_detuned_a", -kJ, 4e7, 0.2e-6, driven_obs, ""));

    const std::vector<Observable> off_obs{O::rho11, O::rho22, O::rho33, O::rho44,
                                          O::rho_aa, O::rho_ss, O::re_rho23, O::C};
    for (const double g : {1e6, 1e5}) {
        Scenario s = make_driven(g == 1e6 ? "switch_off" : "switch_off_g1e5", kJ, 4e7, 3e-6,
                                 off_obs, "fig6b");
        s.params.gamma = g;
        s.samples = 3001;
        s.field_off_at_first_ss_max = true;
        c.push_back(s);
    }

    Scenario z;
    z.name = "zeno_sweep";
    z.kind = ScenarioKind::zeno;
    z.initial = "f";
    z.params = SystemParams::free(kOmega0, kJ, kGamma);
    z.zeno_taus = {0.1e-9, 0.01e-9, 0.005e-9};
    z.zeno_total_time = 1e-9;
    z.horizon = z.zeno_total_time;
    z.samples = 0;
    z.figure = "fig3b";
    c.push_back(z);

    for (const auto& s : c) s.validate();
    return c;
}

struct Segment {
    std::vector<DensityMatrix> states;
    IntegrationStats meta;
};

void merge_stats(IntegrationStats& into, const IntegrationStats& s) {
    into.accepted_steps += s.accepted_steps;
    into.rejected_steps += s.rejected_steps;
    into.rhs_evaluations += s.rhs_evaluations;
    into.max_error_estimate = std::max(into.max_error_estimate, s.max_error_estimate);
    into.max_trace_drift = std::max(into.max_trace_drift, s.max_trace_drift);
    into.max_hermiticity_drift = std::max(into.max_hermiticity_drift, s.max_hermiticity_drift);
    into.time_scale = std::max(into.time_scale, s.time_scale);
    if (s.min_step > 0.0)
        into.min_step = into.min_step > 0.0 ? std::min(into.min_step, s.min_step) : s.min_step;
    into.max_step_taken = std::max(into.max_step_taken, s.max_step_taken);
}

// Integrates from rho0 at absolute time t0 and samples at absolute `times` (all >= t0).
Segment run_segment(RhsVariant variant, const DensityMatrix& rho0, const SystemParams& params,
                    double t0, std::span<const double> times, const IntegrationConfig& base) {
    IntegrationConfig cfg = base;
    cfg.sample_times.clear();
    for (const double t : times) cfg.sample_times.push_back(std::max(t - t0, 0.0));
    Trajectory tr = integrate(variant, rho0, params, cfg);
    Segment seg;
    seg.meta = tr.meta;
    seg.states.reserve(tr.samples.size());
    for (auto& s : tr.samples) seg.states.push_back(std::move(s.rho));
    return seg;
}

// First rho_ss maximum of the driven dynamics, searched on the scenario grid in
// chunks so the search stops shortly after the maximum.
double find_switch_off(const Scenario& s, RhsVariant variant, const IntegrationConfig& base) {
    constexpr std::size_t kChunk = 100;
    const double dt = s.horizon / static_cast<double>(s.samples - 1);
    const PureState& ss = *projector_state(Observable::rho_ss);

    std::vector<double> ts{0.0};
    DensityMatrix rho = pure_density(s.initial_state());
    std::vector<double> vs{expectation(rho.matrix(), ss)};
    while (ts.back() < s.horizon) {
        const double t0 = ts.back();
        std::vector<double> chunk;
        for (std::size_t k = 1; k <= kChunk; ++k) {
            const double t = t0 + static_cast<double>(k) * dt;
            if (t > s.horizon) break;
            chunk.push_back(t);
        }
        if (chunk.empty()) break;
        const Segment seg = run_segment(variant, rho, s.params, t0, chunk, base);
        for (std::size_t k = 0; k < chunk.size(); ++k) {
            ts.push_back(chunk[k]);
            vs.push_back(expectation(seg.states[k].matrix(), ss));
        }
        rho = seg.states.back();
        if (const auto m = try_first_maximum(ts, vs); m && m->t > 0.0) return m->t;
    }
    throw Error("scenario " + s.name + ": no rho_ss maximum before the horizon");
}

}  // namespace

std::string_view observable_name(Observable o) { return kObservableNames.at(static_cast<std::size_t>(o)); }

Observable parse_observable(std::string_view name) {
    for (std::size_t i = 0; i < kObservableNames.size(); ++i)
        if (kObservableNames[i] == name) return kObservables[i];
    std::string list;
    for (const auto n : kObservableNames) list += (list.empty() ? "" : ", ") + std::string(n);
    throw InvalidArgument("unknown observable '" + std::string(name) + "' (valid: " + list + ")");
}

std::span<const Observable> all_observables() { return kObservables; }

double evaluate(Observable o, const DensityMatrix& rho) {
    if (o == Observable::C) return concurrence(rho).value;
    if (o == Observable::re_rho23) return rho(1, 2).real();
    return population(rho, *projector_state(o));
}

double evaluate_lenient(Observable o, const DensityMatrix& rho) {
    if (o == Observable::C) {
        try {
            return concurrence(rho).value;
        } catch (const UnphysicalState&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }
    if (o == Observable::re_rho23) return rho(1, 2).real();
    return expectation(rho.matrix(), *projector_state(o));
}

void Scenario::validate() const {
    if (name.empty()) throw InvalidArgument("scenario: empty name");
    params.validate();
    (void)initial_state();
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw InvalidArgument("scenario " + name + ": horizon must be > 0");
    if (kind == ScenarioKind::zeno) {
        if (zeno_taus.empty()) throw InvalidArgument("scenario " + name + ": no zeno intervals");
        for (const double tau : zeno_taus)
            if (!(tau > 0.0)) throw InvalidArgument("scenario " + name + ": zeno tau must be > 0");
        if (!(zeno_total_time > 0.0)) throw InvalidArgument("scenario " + name + ": zeno T must be > 0");
        return;
    }
    if (samples < 2) throw InvalidArgument("scenario " + name + ": need at least 2 samples");
    if (observables.empty()) throw InvalidArgument("scenario " + name + ": no observables");
    if (field_off_time && field_off_at_first_ss_max)
        throw InvalidArgument("scenario " + name + ": fixed switch-off and trigger are exclusive");
    if (has_field_off()) {
        if (!params.driven) throw InvalidArgument("scenario " + name + ": field switch-off needs a driven scenario");
        if (field_off_time && !(*field_off_time > 0.0 && *field_off_time < horizon))
            throw InvalidArgument("scenario " + name + ": field_off_time must lie in (0, horizon)");
        for (const Observable o : observables)
            if (o == Observable::rho_pp || o == Observable::rho_qq)
                throw InvalidArgument("scenario " + name + ": " + std::string(observable_name(o)) +
                                      " is frame dependent after switch-off");
    }
    if (zoom && !(zoom->start >= 0.0 && zoom->end > zoom->start && zoom->end <= horizon && zoom->samples >= 2))
        throw InvalidArgument("scenario " + name + ": bad zoom window");
}

const std::vector<Scenario>& catalog() {
    static const std::vector<Scenario> c = build_catalog();
    return c;
}

const Scenario& find_scenario(std::string_view name) {
    for (const auto& s : catalog())
        if (s.name == name) return s;
    std::string list;
    for (const auto& s : catalog()) list += (list.empty() ? "" : ", ") + s.name;
    throw InvalidArgument("unknown scenario '" + std::string(name) + "' (valid: " + list + ")");
}

void apply_parameter(Scenario& s, std::string_view param, double value) {
    if (param == "omega0") s.params.omega0 = value;
    else if (param == "delta_l") s.params.delta_l = value;
    else if (param == "J") s.params.J = value;
    else if (param == "Omega") s.params.Omega = value;
    else if (param == "gamma") s.params.gamma = value;
    else if (param == "horizon") {
        s.horizon = value;
        if (s.zoom && s.zoom->end > value) s.zoom.reset();
    } else if (param == "samples") {
        if (!(value >= 2.0) || value != std::floor(value) || value > 1e8)
            throw InvalidArgument("samples must be an integer >= 2");
        s.samples = static_cast<std::size_t>(value);
    } else
        throw InvalidArgument("unknown parameter '" + std::string(param) +
                              "' (valid: omega0, delta_l, J, Omega, gamma, horizon, samples)");
    s.validate();
}

std::vector<double> ObservableTable::column(Observable o) const {
    const auto it = std::find(columns.begin(), columns.end(), o);
    if (it == columns.end())
        throw InvalidArgument("table has no column " + std::string(observable_name(o)));
    const auto j = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[j]);
    return out;
}

std::vector<double> scenario_times(const Scenario& s) {
    std::vector<double> t = IntegrationConfig::uniform_samples(s.horizon, s.samples);
    if (s.zoom) {
        const double step = (s.zoom->end - s.zoom->start) / static_cast<double>(s.zoom->samples - 1);
        for (std::size_t k = 0; k < s.zoom->samples; ++k)
            t.push_back(k + 1 == s.zoom->samples ? s.zoom->end : s.zoom->start + static_cast<double>(k) * step);
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

ObservableTable run_scenario(const Scenario& s, const IntegrationConfig& config, RhsVariant variant) {
    s.validate();
    if (s.kind != ScenarioKind::trajectory)
        throw InvalidArgument("scenario " + s.name + " is not a trajectory scenario");

    IntegrationConfig base = config;
    if (variant == RhsVariant::published) base.check_invariants = false;
    const std::vector<double> times = config.sample_times.empty() ? scenario_times(s) : config.sample_times;

    ObservableTable table;
    table.columns = s.observables;
    table.variant = variant;
    table.times = times;

    const DensityMatrix rho0 = pure_density(s.initial_state());
    try {
        if (!s.has_field_off()) {
            Segment seg = run_segment(variant, rho0, s.params, 0.0, times, base);
            table.states = std::move(seg.states);
            table.meta = seg.meta;
        } else {
            const double t_off = s.field_off_time ? *s.field_off_time : find_switch_off(s, variant, base);
            table.field_off_time = t_off;

            std::vector<double> before, after;
            for (const double t : times) (t <= t_off ? before : after).push_back(t);
            const bool exact = !before.empty() && before.back() == t_off;
            if (!exact) before.push_back(t_off);

            Segment on = run_segment(variant, rho0, s.params, 0.0, before, base);
            const DensityMatrix at_off = on.states.back();
            if (!exact) on.states.pop_back();
            table.meta = on.meta;
            table.states = std::move(on.states);

            if (!after.empty()) {
                SystemParams off = s.params;
                off.Omega = 0.0;  // rotating frame kept
                Segment free = run_segment(variant, at_off, off, t_off, after, base);
                merge_stats(table.meta, free.meta);
                for (auto& st : free.states) table.states.push_back(std::move(st));
            }
        }
    } catch (const IntegrationError& e) {
        throw IntegrationError("scenario " + s.name + ": " + e.what(), e.t_reached());
    }

    table.rows.reserve(table.states.size());
    for (const auto& rho : table.states) {
        std::vector<double> row;
        row.reserve(table.columns.size());
        for (const Observable o : table.columns)
            row.push_back(variant == RhsVariant::published ? evaluate_lenient(o, rho) : evaluate(o, rho));
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<ObservableTable> run_scenarios(std::span<const Scenario> scenarios,
                                           const IntegrationConfig& config, RhsVariant variant,
                                           std::size_t jobs) {
    std::vector<ObservableTable> out(scenarios.size());
    parallel_for(scenarios.size(), jobs, [&](std::size_t i) { out[i] = run_scenario(scenarios[i], config, variant); });
    return out;
}

std::optional<Extremum> try_first_maximum(std::span<const double> t, std::span<const double> v) {
    if (t.size() != v.size()) throw InvalidArgument("find_first_maximum: size mismatch");
    const std::size_t n = v.size();
    if (n == 0) throw InvalidArgument("find_first_maximum: empty series");
    if (n == 1) return std::nullopt;

    bool up = false, down = false;
    for (std::size_t i = 1; i < n; ++i) {
        up = up || v[i] > v[i - 1];
        down = down || v[i] < v[i - 1];
    }
    if (!(up && down)) return std::nullopt;  // constant or monotone

    if (v[0] > v[1]) return Extremum{t[0], v[0]};
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
        // Parabola through the three samples, in coordinates centred on t[i].
        const double x0 = t[i - 1] - t[i], x2 = t[i + 1] - t[i];
        const double d0 = (v[i - 1] - v[i]) / x0, d2 = (v[i + 1] - v[i]) / x2;
        const double a = (d2 - d0) / (x2 - x0);
        const double b = d0 - a * x0;
        if (!(a < 0.0)) return Extremum{t[i], v[i]};
        const double xv = std::clamp(-b / (2.0 * a), x0, x2);
        return Extremum{t[i] + xv, v[i] + b * xv + a * xv * xv};
    }
    return std::nullopt;
}

Extremum find_first_maximum(std::span<const double> t, std::span<const double> v) {
    if (const auto m = try_first_maximum(t, v)) return *m;
    throw InvalidArgument("find_first_maximum: series has no local maximum (constant or monotone)");
}

std::vector<ConcurrenceMaximum> concurrence_maxima(const ObservableTable& table) {
    const std::vector<double> c = table.column(Observable::C);
    std::vector<ConcurrenceMaximum> out;
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        if (!(c[i] > c[i - 1] && c[i] >= c[i + 1])) continue;
        const DensityMatrix e = to_entangled_basis(table.states[i]);
        std::size_t ref = 0;
        for (std::size_t k = 1; k < 4; ++k)
            if (e(k, k).real() > e(ref, ref).real()) ref = k;
        ConcurrenceMaximum m{table.times[i], c[i], {}, {}};
        const double norm = std::sqrt(std::max(e(ref, ref).real(), 0.0));
        for (std::size_t k = 0; k < 4; ++k) {
            m.populations[k] = e(k, k).real();
            m.amplitudes[k] = norm > 0.0 ? e(k, ref) / norm : cplx{};
        }
        out.push_back(m);
    }
    return out;
}

}  // namespace molent
