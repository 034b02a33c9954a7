#pragma once

#include <cstddef>
#include <optional>

#include "molent/qcore.hpp"

namespace molent {

/// Published element equations against the Hamiltonian-derived generator.
struct ConsistencyReport {
    std::size_t samples = 0;
    double horizon = 0.0;
    /// max over samples and i of |rho_ii(published) - rho_ii(derived)|
    double max_population_deviation = 0.0;
    /// Same for C, over samples where both states are physical. Empty if none.
    std::optional<double> max_concurrence_deviation;
    /// First sample at which the published state leaves the physical set.
    std::optional<double> published_unphysical_time;
    /// max |tr rho - 1| of the published system integrated with its
    /// Hamiltonian rho44 line instead of the closure.
    double published_raw_trace_drift = 0.0;
    double published_closure_trace_drift = 0.0;
    double derived_trace_drift = 0.0;
    /// max |x(t) - x(0)| of x = rho33 - rho22.
    double published_rho33_minus_rho22_drift = 0.0;
    double derived_rho33_minus_rho22_drift = 0.0;
};

struct AuditOptions {
    std::size_t samples = 1001;
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
};

/// Integrates both variants from rho0 over [0, horizon] on a uniform grid.
/// Throws IntegrationError if an integration fails.
ConsistencyReport consistency_report(const SystemParams& params, const DensityMatrix& rho0,
                                     double horizon, const AuditOptions& options = {});

}  // namespace molent
