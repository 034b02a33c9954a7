#include "molent/cli/app.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "molent/audit.hpp"
#include "molent/cli/output.hpp"
#include "molent/cli/run_config.hpp"
#include "molent/kernels.hpp"
#include "molent/cli/units.hpp"
#include "molent/error.hpp"
#include "molent/parallel.hpp"
#include "molent/physics.hpp"
#include "molent/scenarios.hpp"
#include "molent/zeno.hpp"

namespace molent::cli {
namespace {

using Opt = std::optional<std::string>;
using namespace molent::physics;

std::string one_line(std::string s) {
    for (char& c : s) {
        if (c == '\n' || c == '\r') c = ' ';
        if (c == '"') c = '\'';
    }
    return s;
}

void error_line(std::ostream& err, int code, const char* kind, const std::string& msg,
                std::optional<double> t_reached = std::nullopt) {
    err << "error code=" << code << " kind=" << kind;
    if (t_reached) err << " t_reached=" << format_number(*t_reached);
    err << " message=\"" << one_line(msg) << "\"\n";
}

double q(const Opt& o, Dimension d, double fallback) { return o ? parse_quantity(*o, d) : fallback; }

// Physical flags shared by several subcommands.
struct PhysFlags {
    Opt omega0, J, Omega, gamma, delta_l;

    void add(CLI::App* app) {
        app->add_option("--omega0", omega0, "Doublet frequency (rad/s)");
        app->add_option("--J", J, "Dipole-dipole rate (1/s)");
        app->add_option("--Omega", Omega, "Rabi frequency (1/s)");
        app->add_option("--gamma", gamma, "Dephasing rate (1/s)");
        app->add_option("--delta-l", delta_l, "Detuning omega0 - omega_l (rad/s)");
    }

    std::map<std::string, double> overrides() const {
        std::map<std::string, double> m;
        if (omega0) m["omega0"] = parse_quantity(*omega0, Dimension::rate);
        if (J) m["J"] = parse_quantity(*J, Dimension::rate);
        if (Omega) m["Omega"] = parse_quantity(*Omega, Dimension::rate);
        if (gamma) m["gamma"] = parse_quantity(*gamma, Dimension::rate);
        if (delta_l) m["delta_l"] = parse_quantity(*delta_l, Dimension::rate);
        return m;
    }
};

struct RunFlags {
    Opt scenario, config, write_config, out, rhs, rel_tol, abs_tol, horizon, sweep, jobs;
    Opt initial, samples, observables, maxima, max_steps;
    bool driven = false;
    PhysFlags phys;
};

RunConfig build_run_config(const RunFlags& f) {
    RunConfig c;
    if (f.config) c = load_run_config(*f.config);
    if (f.scenario) {
        c.scenario = *f.scenario;
        c.custom.reset();
    }
    std::map<std::string, double> over = f.phys.overrides();
    if (f.initial || (!c.scenario && !c.custom)) {
        if (!f.initial) throw InvalidArgument("run: give --scenario, --config or --initial with --horizon");
        if (c.scenario) throw InvalidArgument("run: --initial describes a custom run and excludes --scenario");
        CustomSpec cs;
        cs.initial = *f.initial;
        cs.params.driven = f.driven;
        cs.params.omega0 = over.count("omega0") ? over["omega0"] : 0.0;
        cs.params.J = over.count("J") ? over["J"] : 0.0;
        cs.params.Omega = over.count("Omega") ? over["Omega"] : 0.0;
        cs.params.gamma = over.count("gamma") ? over["gamma"] : 0.0;
        cs.params.delta_l = over.count("delta_l") ? over["delta_l"] : 0.0;
        if (!f.horizon) throw InvalidArgument("run: a custom run needs --horizon");
        cs.horizon = parse_quantity(*f.horizon, Dimension::time);
        if (f.samples) cs.samples = static_cast<std::size_t>(parse_quantity(*f.samples, Dimension::count));
        c.custom = cs;
        over.clear();
    } else {
        if (f.horizon) over["horizon"] = parse_quantity(*f.horizon, Dimension::time);
        if (f.samples) over["samples"] = parse_quantity(*f.samples, Dimension::count);
    }
    for (const auto& [k, v] : over) c.overrides[k] = v;
    if (f.out) c.output = *f.out;
    if (f.rhs) c.rhs = parse_variant(*f.rhs);
    if (f.rel_tol) c.rel_tol = parse_quantity(*f.rel_tol, Dimension::rate);
    if (f.abs_tol) c.abs_tol = parse_quantity(*f.abs_tol, Dimension::rate);
    if (f.sweep) c.sweep = parse_sweep(*f.sweep);
    if (f.max_steps) c.max_steps = static_cast<std::size_t>(parse_quantity(*f.max_steps, Dimension::count));
    if (f.jobs) c.jobs = static_cast<std::size_t>(parse_quantity(*f.jobs, Dimension::count));
    if (f.observables) {
        c.observables.clear();
        std::stringstream ss(*f.observables);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) c.observables.push_back(item);
    }
    c.validate();
    return c;
}

IntegrationConfig integration_of(const RunConfig& c) {
    IntegrationConfig ic;
    ic.rel_tol = c.rel_tol;
    ic.abs_tol = c.abs_tol;
    ic.max_steps = c.max_steps;
    return ic;
}

std::vector<ZenoRow> zeno_rows(const SystemParams& params, const std::string& target, double tau,
                               std::size_t n) {
    ZenoProtocol p;
    p.tau = tau;
    p.count = n;
    p.target = named_state(target);
    p.params = params;
    const auto with_gamma = run_zeno(p);
    p.params.gamma = 0.0;
    const auto without = run_zeno(p);

    std::vector<ZenoRow> rows{{0.0, 1.0, 1.0, 1.0, 1.0}};
    for (std::size_t k = 0; k < n; ++k) {
        const auto a = analytic_survival(params.J, tau, k + 1);
        rows.push_back({with_gamma[k].t, with_gamma[k].survival, without[k].survival, a.exact, a.gaussian});
    }
    return rows;
}

std::size_t measurement_count(double T, double tau) {
    const double n = std::round(T / tau);
    if (!(n >= 1.0) || std::abs(n * tau - T) > 1e-9 * T)
        throw InvalidArgument("zeno: T must be a positive multiple of tau");
    return static_cast<std::size_t>(n);
}

void write_index(const std::string& out, const std::string& param, const std::vector<double>& values,
                 const std::vector<std::string>& paths) {
    std::ostringstream s;
    s << "param,value,path\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        s << param << ',' << format_number(values[i]) << ',' << paths[i] << '\n';
    const std::string stem = out.ends_with(".csv") ? out.substr(0, out.size() - 4) : out;
    write_text_file(s.str(), stem + ".index.csv");
}

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
    const RunConfig c = build_run_config(f);
    if (f.write_config) {
        save_run_config(c, *f.write_config);
        err << "wrote " << *f.write_config << "\n";
        return kExitOk;
    }
    const Scenario s = resolve_scenario(c);
    const IntegrationConfig ic = integration_of(c);

    if (s.kind == ScenarioKind::zeno) {
        if (c.output == "-") throw InvalidArgument("run: the zeno sweep writes one CSV per tau, give --out");
        std::vector<std::string> paths;
        for (const double tau : s.zeno_taus) {
            const auto rows = zeno_rows(s.params, s.initial, tau, measurement_count(s.zeno_total_time, tau));
            paths.push_back(sweep_point_path(c.output, "tau", tau));
            write_zeno_csv_file(rows, paths.back());
            out << "tau_s=" << format_number(tau) << " survival=" << format_number(rows.back().survival)
                << " survival_gamma0=" << format_number(rows.back().survival_gamma0) << "\n";
        }
        write_index(c.output, "tau", s.zeno_taus, paths);
        return kExitOk;
    }

    if (c.sweep) {
        if (c.output == "-") throw InvalidArgument("run: a sweep writes one CSV per point, give --out");
        std::vector<Scenario> points;
        std::vector<std::string> paths;
        for (const double v : c.sweep->values) {
            Scenario p = s;
            apply_parameter(p, c.sweep->param, v);
            points.push_back(std::move(p));
            paths.push_back(sweep_point_path(c.output, c.sweep->param, v));
        }
        parallel_for(points.size(), c.jobs, [&](std::size_t i) {
            write_csv_file(run_scenario(points[i], ic, c.rhs), paths[i]);
        });
        write_index(c.output, c.sweep->param, c.sweep->values, paths);
        err << "ok scenario=" << s.name << " points=" << points.size() << "\n";
        return kExitOk;
    }

    const ObservableTable t = run_scenario(s, ic, c.rhs);
    write_csv_file(t, c.output);
    if (f.maxima) write_maxima_csv(concurrence_maxima(t), *f.maxima);
    err << "ok scenario=" << s.name << " rhs=" << variant_name(c.rhs)
        << " kernels=" << kernels::backend_name(kernels::active_backend()) << " samples=" << t.rows.size()
        << " steps=" << t.meta.accepted_steps << " rejected=" << t.meta.rejected_steps;
    if (t.field_off_time) err << " field_off_s=" << format_number(*t.field_off_time);
    err << "\n";
    return kExitOk;
}

void print_catalog(std::ostream& out) {
    for (const auto& s : catalog()) {
        out << s.name << " kind=" << (s.kind == ScenarioKind::zeno ? "zeno" : "trajectory")
            << " initial=" << s.initial << " driven=" << (s.params.driven ? 1 : 0)
            << " omega0=" << format_number(s.params.omega0) << " delta_l=" << format_number(s.params.delta_l)
            << " J=" << format_number(s.params.J) << " Omega=" << format_number(s.params.Omega)
            << " gamma=" << format_number(s.params.gamma) << " horizon_s=" << format_number(s.horizon);
        if (s.kind == ScenarioKind::zeno) {
            out << " taus_s=";
            for (std::size_t i = 0; i < s.zeno_taus.size(); ++i) out << (i ? ";" : "") << format_number(s.zeno_taus[i]);
            out << " T_s=" << format_number(s.zeno_total_time);
        } else {
            out << " samples=" << s.samples << " field_off="
                << (s.field_off_at_first_ss_max ? "first_ss_max"
                    : s.field_off_time         ? format_number(*s.field_off_time)
                                               : "none");
            out << " observables=";
            for (std::size_t i = 0; i < s.observables.size(); ++i) out << (i ? "," : "") << observable_name(s.observables[i]);
        }
        out << " figure=" << (s.figure.empty() ? "none" : s.figure) << "\n";
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement dynamics of two dipole-coupled two-level molecules", "molent"};
    app.require_subcommand(1);

    RunFlags rf;
    CLI::App* run = app.add_subcommand("run", "Integrate a scenario and write a CSV trajectory");
    run->add_option("--scenario", rf.scenario, "Preset name (see catalog)");
    run->add_option("--config", rf.config, "JSON run config");
    run->add_option("--write-config", rf.write_config, "Write the resolved run config and exit");
    run->add_option("--out", rf.out, "CSV path, '-' for stdout; stem for sweeps");
    run->add_option("--rhs", rf.rhs, "derived|published");
    run->add_option("--rel-tol", rf.rel_tol, "Relative tolerance");
    run->add_option("--abs-tol", rf.abs_tol, "Absolute tolerance");
    run->add_option("--horizon", rf.horizon, "Horizon (s, ns, us)");
    run->add_option("--sweep", rf.sweep, "param=v1,v2,...");
    run->add_option("--jobs", rf.jobs, "Concurrent sweep points");
    run->add_option("--initial", rf.initial, "Initial named state of a custom run");
    run->add_option("--samples", rf.samples, "Uniform grid samples");
    run->add_option("--max-steps", rf.max_steps, "Step budget per integration");
    run->add_option("--observables", rf.observables, "Comma-separated observable names");
    run->add_option("--maxima", rf.maxima, "Also write the concurrence maxima report");
    run->add_flag("--driven", rf.driven, "Custom run in the rotating frame of the field");
    rf.phys.add(run);

    CLI::App* cat = app.add_subcommand("catalog", "List the preset scenarios");

    Opt z_tau, z_T, z_N, z_target, z_out;
    PhysFlags zp;
    CLI::App* zeno = app.add_subcommand("zeno", "Survival under repeated projective measurement");
    zeno->add_option("--tau", z_tau, "Measurement interval")->required();
    zeno->add_option("--T", z_T, "Total time (N = T / tau)");
    zeno->add_option("--N", z_N, "Number of measurements");
    zeno->add_option("--target", z_target, "Target state (default f)");
    zeno->add_option("--out", z_out, "CSV path");
    zp.add(zeno);

    Opt a_initial, a_horizon, a_samples;
    bool a_driven = false;
    PhysFlags ap;
    CLI::App* audit = app.add_subcommand("audit", "Compare the published and the derived generator");
    audit->add_option("--initial", a_initial, "Initial named state (default e1g2)");
    audit->add_option("--horizon", a_horizon, "Horizon (default 5ns)");
    audit->add_option("--samples", a_samples, "Samples (default 1001)");
    audit->add_flag("--driven", a_driven, "Rotating frame of the field");
    ap.add(audit);

    Opt c_d0, c_r, c_omega0, c_El;
    CLI::App* consts = app.add_subcommand("constants", "Derived rates from molecular data");
    consts->add_option("--d0", c_d0, "Dipole moment (default 1.46D)");
    consts->add_option("--r", c_r, "Separation (default 10nm)");
    consts->add_option("--omega0", c_omega0, "Doublet frequency (default 1.5e11)");
    consts->add_option("--E-l", c_El, "Field amplitude (default 0 V/m)");

    std::string p_figure;
    std::vector<std::string> p_csv;
    Opt p_out;
    CLI::App* plot = app.add_subcommand("plot", "Emit a gnuplot script for a figure");
    plot->add_option("--figure", p_figure, "Figure id")->required();
    plot->add_option("--csv", p_csv, "Input CSV (repeatable)")->required();
    plot->add_option("--out", p_out, "Script path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        out << sub->help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        error_line(err, kExitUsage, "usage", e.what());
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    try {
        if (active == run) return cmd_run(rf, out, err);
        if (active == cat) {
            print_catalog(out);
            return kExitOk;
        }
        if (active == zeno) {
            const double tau = parse_quantity(*z_tau, Dimension::time);
            if (z_T.has_value() == z_N.has_value()) throw InvalidArgument("zeno: give exactly one of --T and --N");
            const std::size_t n = z_N ? static_cast<std::size_t>(parse_quantity(*z_N, Dimension::count))
                                      : measurement_count(parse_quantity(*z_T, Dimension::time), tau);
            SystemParams p = SystemParams::free(q(zp.omega0, Dimension::rate, 1.5e11), q(zp.J, Dimension::rate, 4e9),
                                                q(zp.gamma, Dimension::rate, 0.0));
            if (zp.Omega || zp.delta_l) throw InvalidArgument("zeno: the protocol is field free");
            const auto rows = zeno_rows(p, z_target.value_or("f"), tau, n);
            if (z_out) write_zeno_csv_file(rows, *z_out);
            out << "N=" << n << " tau_s=" << format_number(tau) << " T_s=" << format_number(tau * static_cast<double>(n))
                << " survival=" << format_number(rows.back().survival) << " exact=" << format_number(rows.back().exact)
                << " gaussian=" << format_number(rows.back().gaussian) << "\n";
            return kExitOk;
        }
        if (active == audit) {
            SystemParams p;
            p.driven = a_driven;
            p.omega0 = q(ap.omega0, Dimension::rate, 0.0);
            p.J = q(ap.J, Dimension::rate, 4e9);
            p.Omega = q(ap.Omega, Dimension::rate, 0.0);
            p.gamma = q(ap.gamma, Dimension::rate, 0.0);
            p.delta_l = q(ap.delta_l, Dimension::rate, 0.0);
            AuditOptions o;
            if (a_samples) o.samples = static_cast<std::size_t>(parse_quantity(*a_samples, Dimension::count));
            const auto r = consistency_report(p, pure_density(named_state(a_initial.value_or("e1g2"))),
                                              q(a_horizon, Dimension::time, 5e-9), o);
            const auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("none"); };
            out << "max_population_deviation=" << format_number(r.max_population_deviation) << "\n"
                << "max_concurrence_deviation=" << opt(r.max_concurrence_deviation) << "\n"
                << "published_unphysical_time_s=" << opt(r.published_unphysical_time) << "\n"
                << "published_raw_trace_drift=" << format_number(r.published_raw_trace_drift) << "\n"
                << "published_closure_trace_drift=" << format_number(r.published_closure_trace_drift) << "\n"
                << "derived_trace_drift=" << format_number(r.derived_trace_drift) << "\n"
                << "published_rho33_minus_rho22_drift=" << format_number(r.published_rho33_minus_rho22_drift) << "\n"
                << "derived_rho33_minus_rho22_drift=" << format_number(r.derived_rho33_minus_rho22_drift) << "\n";
            return kExitOk;
        }
        if (active == consts) {
            MolecularConstants m;
            m.d0 = q(c_d0, Dimension::dipole, 1.46 * kDebye);
            m.mu_eg = m.d0;
            m.r = q(c_r, Dimension::length, 10e-9);
            m.E_l = q(c_El, Dimension::field, 0.0);
            m.validate();
            const double omega0 = q(c_omega0, Dimension::rate, 1.5e11);
            const double J = dipole_coupling(m);
            const double A = einstein_a(m.mu_eg, omega0);
            out << "J_per_s=" << format_number(J) << "\n"
                << "V_joule=" << format_number(J * PhysicalConstants::hbar) << "\n"
                << "A_per_s=" << format_number(A) << "\n"
                << "A_over_J=" << format_number(A / J) << "\n"
                << "Omega_per_s=" << format_number(rabi_frequency(m.mu_eg, m.E_l)) << "\n";
            return kExitOk;
        }
        if (active == plot) {
            write_text_file(plot_script(p_figure, p_csv), p_out.value_or("-"));
            return kExitOk;
        }
        throw Error("no subcommand");
    } catch (const IntegrationError& e) {
        error_line(err, kExitIntegration, "integration", e.what(), e.t_reached());
        return kExitIntegration;
    } catch (const IoError& e) {
        error_line(err, kExitIo, "io", e.what());
        return kExitIo;
    } catch (const InvalidArgument& e) {
        error_line(err, kExitUsage, "usage", e.what());
        err << active->help();
        return kExitUsage;
    } catch (const std::exception& e) {
        error_line(err, kExitOther, "other", e.what());
        return kExitOther;
    }
}

}  // namespace molent::cli
