#pragma once

#include <cstddef>
#include <vector>

#include "molent/qcore.hpp"

namespace molent {

struct ZenoProtocol {
    double tau = 0.0;       // seconds between measurements
    std::size_t count = 1;  // N
    PureState target = named_state("f");
    SystemParams params;    // Omega must be 0

    double total_time() const { return tau * static_cast<double>(count); }

    /// Throws InvalidArgument unless tau > 0, N >= 1, Omega = 0 and tau * J < 1.
    void validate() const;
};

struct SurvivalPoint {
    double t;         // k * tau
    double survival;  // probability that all k measurements found the target
};

/// Selective measurement chain starting in the target state. Between
/// measurements the state evolves by the exact free propagator; after each
/// successful projection it is reset to P rho P / p.
/// Returns one point per measurement, k = 1..N.
/// Throws Error when a single-measurement probability drops to <= 1e-15.
std::vector<SurvivalPoint> run_zeno(const ZenoProtocol& protocol);

struct AnalyticSurvival {
    double exact;     // [cos^2(J tau)]^N
    double gaussian;  // exp(-J^2 T^2 / N), T = N tau
};

AnalyticSurvival analytic_survival(double J, double tau, std::size_t count);

}  // namespace molent
