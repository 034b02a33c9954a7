#include "molent/audit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "molent/entanglement.hpp"
#include "molent/error.hpp"
#include "molent/integrator.hpp"
#include "molent/liouvillian.hpp"

namespace molent {
namespace {

constexpr double kPhysicalTrace = 1e-6;
constexpr double kPhysicalEigen = -1e-9;

std::vector<Matrix4> run(RhsVariant variant, Rho44Line line, const SystemParams& params,
                         const DensityMatrix& rho0, const IntegrationConfig& cfg) {
    const double rate = params.fastest_rate();
    const double horizon = cfg.sample_times.back();
    const double scale = rate > 0.0 ? rate : 1.0 / horizon;
    const Generator gen = make_generator(variant, params, scale, line);
    const auto packed = propagate(gen, pack(rho0.matrix(), gen.layout()), cfg);
    std::vector<Matrix4> out;
    out.reserve(packed.states.size());
    for (const auto& y : packed.states) out.push_back(unpack(y, gen.layout()));
    return out;
}

bool physical(const Matrix4& m) {
    const auto d = DensityMatrix::diagnose(m);
    return d.trace_deviation <= kPhysicalTrace && d.min_eigenvalue >= kPhysicalEigen;
}

double diff_drift(const std::vector<Matrix4>& traj) {
    const double x0 = (traj.front()(2, 2) - traj.front()(1, 1)).real();
    double worst = 0.0;
    for (const auto& m : traj) worst = std::max(worst, std::abs((m(2, 2) - m(1, 1)).real() - x0));
    return worst;
}

double trace_drift(const std::vector<Matrix4>& traj) {
    double worst = 0.0;
    for (const auto& m : traj) worst = std::max(worst, std::abs(m.trace().real() - 1.0));
    return worst;
}

}  // namespace

ConsistencyReport consistency_report(const SystemParams& params, const DensityMatrix& rho0,
                                     double horizon, const AuditOptions& options) {
    params.validate();
    if (!(horizon > 0.0)) throw InvalidArgument("audit: horizon must be > 0");
    IntegrationConfig cfg;
    cfg.rel_tol = options.rel_tol;
    cfg.abs_tol = options.abs_tol;
    cfg.sample_times = IntegrationConfig::uniform_samples(horizon, options.samples);
    cfg.check_invariants = false;
    cfg.validate();

    const auto derived = run(RhsVariant::derived, Rho44Line::closure, params, rho0, cfg);
    const auto published = run(RhsVariant::published, Rho44Line::closure, params, rho0, cfg);
    const auto raw = run(RhsVariant::published, Rho44Line::hamiltonian, params, rho0, cfg);

    ConsistencyReport r;
    r.samples = cfg.sample_times.size();
    r.horizon = horizon;
    r.derived_trace_drift = trace_drift(derived);
    r.published_closure_trace_drift = trace_drift(published);
    r.published_raw_trace_drift = trace_drift(raw);
    r.derived_rho33_minus_rho22_drift = diff_drift(derived);
    r.published_rho33_minus_rho22_drift = diff_drift(published);

    for (std::size_t k = 0; k < derived.size(); ++k) {
        const Matrix4& d = derived[k];
        const Matrix4& p = published[k];
        for (std::size_t i = 0; i < 4; ++i)
            r.max_population_deviation =
                std::max(r.max_population_deviation, std::abs((d(i, i) - p(i, i)).real()));
        const bool ok = physical(p);
        if (!ok && !r.published_unphysical_time) r.published_unphysical_time = cfg.sample_times[k];
        if (ok && physical(d)) {
            const double dc = std::abs(concurrence(DensityMatrix::unchecked(d)).value -
                                       concurrence(DensityMatrix::unchecked(p)).value);
            r.max_concurrence_deviation = std::max(r.max_concurrence_deviation.value_or(0.0), dc);
        }
    }
    return r;
}

}  // namespace molent
