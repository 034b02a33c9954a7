#include "molent/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "molent/error.hpp"
#include "molent/kernels.hpp"

namespace molent {

void IntegrationConfig::validate() const {
    const auto tol_ok = [](double v) { return v > 0.0 && v <= 1e-2; };
    if (!tol_ok(rel_tol) || !tol_ok(abs_tol)) {
        throw InvalidArgument("tolerances must lie in (0, 1e-2]");
    }
    if (!(max_step >= 0.0)) throw InvalidArgument("max_step must be >= 0");
    if (sample_times.empty()) throw InvalidArgument("no sample times");
    if (!(sample_times.front() >= 0.0)) throw InvalidArgument("sample times must start at >= 0");
    for (std::size_t i = 1; i < sample_times.size(); ++i) {
        if (!(sample_times[i] > sample_times[i - 1])) {
            throw InvalidArgument("sample times must be strictly increasing");
        }
    }
    if (!std::isfinite(sample_times.back())) throw InvalidArgument("sample horizon must be finite");
}

std::vector<double> IntegrationConfig::uniform_samples(double horizon, std::size_t count) {
    if (!(horizon > 0.0) || count < 2) throw InvalidArgument("uniform_samples: need horizon > 0 and count >= 2");
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) {
        t[i] = horizon * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    t.back() = horizon;
    return t;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) tableau, error weights and dense-output weights.

namespace {

constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// Step-size controller (PI, as in Hairer's DOPRI5).
constexpr double kSafe = 0.9;
constexpr double kBeta = 0.04;
constexpr double kFacMin = 0.2;   // smallest allowed h_new / h
constexpr double kFacMax = 10.0;  // largest allowed h_new / h
constexpr double kDefaultScaledMaxStep = 0.05;

class Stepper {
public:
    Stepper(const Generator& g, const kernels::KernelTable& k)
        : gen_(g), k_(k), n_(g.size()) {
        for (auto& s : stage_) s.assign(n_, 0.0);
        tmp_.assign(n_, 0.0);
        ynew_.assign(n_, 0.0);
        err_.assign(n_, 0.0);
        zero_.assign(n_, 0.0);
    }

    void eval(const std::vector<double>& y, std::vector<double>& out) {
        k_.matvec(gen_.matrix().data(), y.data(), out.data(), n_);
        ++evals_;
    }

    void stage_state(const std::vector<double>& y, double h, std::initializer_list<double> coeff) {
        double c[7];
        const double* s[7];
        std::size_t m = 0;
        for (double a : coeff) {
            c[m] = h * a;
            s[m] = stage_[m].data();
            ++m;
        }
        k_.combine(tmp_.data(), y.data(), c, s, m, n_);
    }

    // One trial step from y with k1 = stage_[0] already holding G y.
    // Returns the scaled RMS error; the candidate lands in ynew_ and G ynew in stage_[6].
    double trial(const std::vector<double>& y, double h, double atol, double rtol) {
        stage_state(y, h, {a21});
        eval(tmp_, stage_[1]);
        stage_state(y, h, {a31, a32});
        eval(tmp_, stage_[2]);
        stage_state(y, h, {a41, a42, a43});
        eval(tmp_, stage_[3]);
        stage_state(y, h, {a51, a52, a53, a54});
        eval(tmp_, stage_[4]);
        stage_state(y, h, {a61, a62, a63, a64, a65});
        eval(tmp_, stage_[5]);
        stage_state(y, h, {a71, 0.0, a73, a74, a75, a76});
        ynew_.swap(tmp_);
        eval(ynew_, stage_[6]);

        const double ce[7] = {h * e1, 0.0, h * e3, h * e4, h * e5, h * e6, h * e7};
        const double* s[7];
        for (std::size_t i = 0; i < 7; ++i) s[i] = stage_[i].data();
        k_.combine(err_.data(), zero_.data(), ce, s, 7, n_);
        const double sq = k_.scaled_error_sq(err_.data(), y.data(), ynew_.data(), atol, rtol, n_);
        return std::sqrt(sq / static_cast<double>(n_));
    }

    // Continuous extension between y (theta = 0) and ynew_ (theta = 1).
    void dense(const std::vector<double>& y, double h, double theta, std::vector<double>& out) const {
        const double theta1 = 1.0 - theta;
        const auto& k = stage_;
        for (std::size_t i = 0; i < n_; ++i) {
            const double r2 = ynew_[i] - y[i];
            const double r3 = h * k[0][i] - r2;
            const double r4 = r2 - h * k[6][i] - r3;
            const double r5 = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] +
                                   d6 * k[5][i] + d7 * k[6][i]);
            out[i] = y[i] + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
        }
    }

    std::vector<double>& k1() { return stage_[0]; }
    std::vector<double>& k7() { return stage_[6]; }
    std::vector<double>& ynew() { return ynew_; }
    std::size_t evals() const { return evals_; }

private:
    const Generator& gen_;
    const kernels::KernelTable& k_;
    std::size_t n_;
    std::vector<double> stage_[7];
    std::vector<double> tmp_, ynew_, err_, zero_;
    std::size_t evals_ = 0;
};

double initial_step(Stepper& st, const std::vector<double>& y0, double atol, double rtol,
                    double hmax, const kernels::KernelTable& k, const Generator& g) {
    const std::size_t n = y0.size();
    std::vector<double> zeros(n, 0.0);
    const double dny = k.scaled_error_sq(y0.data(), zeros.data(), y0.data(), atol, rtol, n);
    const double dnf = k.scaled_error_sq(st.k1().data(), zeros.data(), y0.data(), atol, rtol, n);
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
    h = std::min(h, hmax);

    std::vector<double> y1(n), f1(n), diff(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h * st.k1()[i];
    k.matvec(g.matrix().data(), y1.data(), f1.data(), n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = f1[i] - st.k1()[i];
    const double der2 = std::sqrt(k.scaled_error_sq(diff.data(), zeros.data(), y0.data(), atol, rtol, n)) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, hmax});
}

}  // namespace

PackedTrajectory propagate(const Generator& generator, std::span<const double> y0_in,
                           const IntegrationConfig& config) {
    config.validate();
    const std::size_t n = generator.size();
    if (y0_in.size() != n) throw InvalidArgument("propagate: initial state size mismatch");

    const kernels::KernelTable& kt = kernels::active();
    const double scale = generator.time_scale();
    const double atol = config.abs_tol;
    const double rtol = config.rel_tol;
    const double hmax = config.max_step > 0.0 ? config.max_step * scale : kDefaultScaledMaxStep;

    std::vector<double> taus(config.sample_times.size());
    for (std::size_t i = 0; i < taus.size(); ++i) taus[i] = config.sample_times[i] * scale;
    const double t_end = taus.back();

    PackedTrajectory out;
    out.meta.time_scale = scale;
    out.times = config.sample_times;
    out.states.reserve(taus.size());

    std::vector<double> y(y0_in.begin(), y0_in.end());
    std::size_t next = 0;
    while (next < taus.size() && taus[next] <= 0.0) {
        out.states.push_back(y);
        ++next;
    }
    if (next == taus.size()) return out;

    Stepper st(generator, kt);
    st.eval(y, st.k1());

    double t = 0.0;
    double h = initial_step(st, y, atol, rtol, hmax, kt, generator);
    double facold = 1e-4;
    bool last_rejected = false;
    double min_h = std::numeric_limits<double>::infinity();
    double max_h = 0.0;
    std::vector<double> sample(n);

    while (t < t_end) {
        if (out.meta.accepted_steps + out.meta.rejected_steps >= config.max_steps) {
            throw IntegrationError("step budget exhausted at t = " + sci(t / scale) + " s",
                                   t / scale);
        }
        if (!(h > 0.0) || 0.1 * h <= std::abs(t) * std::numeric_limits<double>::epsilon()) {
            throw IntegrationError("step size underflow at t = " + sci(t / scale) + " s",
                                   t / scale);
        }
        bool last = false;
        if (t + 1.01 * h >= t_end) {
            h = t_end - t;
            last = true;
        }

        double err = st.trial(y, h, atol, rtol);
        if (!std::isfinite(err)) err = 1e10;

        const double fac11 = std::pow(err, 0.2 - kBeta * 0.75);
        if (err <= 1.0) {
            const double t_new = last ? t_end : t + h;
            while (next < taus.size() && taus[next] <= t_new) {
                if (taus[next] == t_new) {
                    out.states.push_back(st.ynew());
                } else {
                    st.dense(y, h, (taus[next] - t) / h, sample);
                    out.states.push_back(sample);
                }
                ++next;
            }
            ++out.meta.accepted_steps;
            out.meta.max_error_estimate = std::max(out.meta.max_error_estimate, err);
            min_h = std::min(min_h, h);
            max_h = std::max(max_h, h);

            facold = std::max(err, 1e-4);
            double fac = fac11 / std::pow(facold, kBeta);
            fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
            double h_new = h / fac;
            if (last_rejected) h_new = std::min(h_new, h);
            h = std::min(h_new, hmax);
            last_rejected = false;

            y.swap(st.ynew());
            st.k1().swap(st.k7());
            t = t_new;
        } else {
            ++out.meta.rejected_steps;
            h = h / std::min(1.0 / kFacMin, fac11 / kSafe);
            last_rejected = true;
        }
    }
    while (next < taus.size()) {  // sample exactly at t_end already handled; guard for rounding
        out.states.push_back(y);
        ++next;
    }

    out.meta.rhs_evaluations = st.evals();
    out.meta.min_step = std::isfinite(min_h) ? min_h / scale : 0.0;
    out.meta.max_step_taken = max_h / scale;
    return out;
}

Trajectory integrate(RhsVariant variant, const DensityMatrix& rho0, const SystemParams& params,
                     const IntegrationConfig& config) {
    params.validate();
    config.validate();

    const double rate = params.fastest_rate();
    const double horizon = config.sample_times.back();
    const double scale = rate > 0.0 ? rate : (horizon > 0.0 ? 1.0 / horizon : 1.0);

    IntegrationConfig cfg = config;
    if (cfg.max_step == 0.0) cfg.max_step = kDefaultScaledMaxStep / scale;

    const Generator gen = make_generator(variant, params, scale);
    const auto y0 = pack(rho0.matrix(), gen.layout());
    PackedTrajectory packed = propagate(gen, y0, cfg);

    Trajectory traj;
    traj.params = params;
    traj.variant = variant;
    traj.meta = packed.meta;
    traj.samples.reserve(packed.states.size());
    for (std::size_t i = 0; i < packed.states.size(); ++i) {
        const double t = packed.times[i];
        const Matrix4 m = unpack(packed.states[i], gen.layout());
        traj.meta.max_trace_drift = std::max(traj.meta.max_trace_drift, std::abs(m.trace().real() - 1.0));
        traj.meta.max_hermiticity_drift = std::max(traj.meta.max_hermiticity_drift, hermiticity_deviation(m));
        if (config.check_invariants) {
            try {
                traj.samples.push_back({t, DensityMatrix(m, config.invariant_tol)});
            } catch (const UnphysicalState& e) {
                throw IntegrationError("invariant violation at t = " + sci(t) + " s: " + e.what(), t);
            }
        } else {
            traj.samples.push_back({t, DensityMatrix::unchecked(m)});
        }
    }
    return traj;
}

// ---------------------------------------------------------------------------

Matrix4 closed_form_free(const Matrix4& rho0, const SystemParams& params, double t) {
    params.validate();
    if (params.Omega != 0.0) throw InvalidArgument("closed_form_free requires Omega = 0");

    const double D = params.splitting();
    const double J = params.J;
    const double g = params.gamma;
    const cplx I{0.0, 1.0};
    Matrix4 out = rho0;

    // (rho33 - rho22, Im rho23) rotate under A = [[0, 4J], [-J, -2g]]; Re rho23 decays at 2g.
    const double sum = rho0(1, 1).real() + rho0(2, 2).real();
    const double diff0 = rho0(2, 2).real() - rho0(1, 1).real();
    const double im0 = rho0(1, 2).imag();
    const double re0 = rho0(1, 2).real();
    const double q2 = g * g - 4.0 * J * J;
    double c = 1.0, s = t;  // E = e^{-g t} (c I + s (A + g I))
    if (q2 < 0.0) {
        const double w = std::sqrt(-q2);
        c = std::cos(w * t);
        s = std::sin(w * t) / w;
    } else if (q2 > 0.0) {
        const double q = std::sqrt(q2);
        c = std::cosh(q * t);
        s = std::sinh(q * t) / q;
    }
    const double damp = std::exp(-g * t);
    const double diff = damp * (c * diff0 + s * (g * diff0 + 4.0 * J * im0));
    const double im = damp * (c * im0 + s * (-J * diff0 - g * im0));
    out(1, 1) = 0.5 * (sum - diff);
    out(2, 2) = 0.5 * (sum + diff);
    out(1, 2) = cplx(re0 * std::exp(-2.0 * g * t), im);

    out(0, 3) = rho0(0, 3) * std::exp((2.0 * I * D - 2.0 * g) * t);

    const cplx plus = std::exp((I * (D + J) - g) * t);
    const cplx minus = std::exp((I * (D - J) - g) * t);
    const cplx u = rho0(0, 1) + rho0(0, 2);
    const cplx v = rho0(0, 1) - rho0(0, 2);
    out(0, 1) = 0.5 * (u * plus + v * minus);
    out(0, 2) = 0.5 * (u * plus - v * minus);
    const cplx u2 = rho0(1, 3) + rho0(2, 3);
    const cplx v2 = rho0(1, 3) - rho0(2, 3);
    out(1, 3) = 0.5 * (u2 * minus + v2 * plus);
    out(2, 3) = 0.5 * (u2 * minus - v2 * plus);

    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) out(j, i) = std::conj(out(i, j));
    return out;
}

DensityMatrix closed_form_free(const DensityMatrix& rho0, const SystemParams& params, double t) {
    return DensityMatrix::unchecked(closed_form_free(rho0.matrix(), params, t));
}

}  // namespace molent
