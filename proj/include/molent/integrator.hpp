#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "molent/liouvillian.hpp"
#include "molent/qcore.hpp"

namespace molent {

struct IntegrationConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    /// Largest step in seconds; 0 selects 0.05 / params.fastest_rate().
    double max_step = 0.0;
    /// Strictly increasing, first >= 0. The integration starts at t = 0.
    std::vector<double> sample_times;
    /// Validate every sample as a physical density matrix.
    bool check_invariants = true;
    DensityMatrix::Tolerances invariant_tol{1e-10, 1e-6, 1e-9};
    std::size_t max_steps = 20'000'000;

    /// Throws InvalidArgument on out-of-range tolerances or unordered samples.
    void validate() const;

    /// `count` equally spaced samples on [0, horizon], both ends included.
    static std::vector<double> uniform_samples(double horizon, std::size_t count);
};

struct IntegrationStats {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;
    double max_error_estimate = 0.0;  // largest accepted scaled error norm
    double max_trace_drift = 0.0;
    double max_hermiticity_drift = 0.0;
    double time_scale = 1.0;  // 1/s; internal time is t * time_scale
    double min_step = 0.0;    // seconds
    double max_step_taken = 0.0;
};

struct TrajectorySample {
    double t;
    DensityMatrix rho;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    SystemParams params;
    RhsVariant variant = RhsVariant::derived;
    IntegrationStats meta;
};

/// Packed-state output of the raw propagator.
struct PackedTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    IntegrationStats meta;
};

/// Dormand-Prince 5(4) with PI step control and its order-4 continuous
/// extension for sampling. Works in scaled time t * generator.time_scale().
/// Deterministic: identical inputs give bit-identical outputs.
PackedTrajectory propagate(const Generator& generator, std::span<const double> y0,
                           const IntegrationConfig& config);

/// Integrates d(rho)/dt of `variant` from rho0 at t = 0 and returns rho at
/// every sample time. Throws IntegrationError on step-size underflow, step
/// budget exhaustion or (with check_invariants) an unphysical sample.
Trajectory integrate(RhsVariant variant, const DensityMatrix& rho0, const SystemParams& params,
                     const IntegrationConfig& config);

/// Exact solution of the Omega = 0 dynamics at time t (any splitting).
/// Throws InvalidArgument when params.Omega != 0.
DensityMatrix closed_form_free(const DensityMatrix& rho0, const SystemParams& params, double t);

/// Matrix-valued variant without validation of the input state.
Matrix4 closed_form_free(const Matrix4& rho0, const SystemParams& params, double t);

}  // namespace molent
