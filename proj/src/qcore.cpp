#include "molent/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "molent/error.hpp"
#include "molent/linalg.hpp"

namespace molent {

Matrix4 Matrix4::identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Matrix4 Matrix4::adjoint() const {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Matrix4 Matrix4::conjugate() const {
    Matrix4 r;
    for (std::size_t k = 0; k < 16; ++k) r.a[k] = std::conj(a[k]);
    return r;
}

cplx Matrix4::trace() const { return a[0] + a[5] + a[10] + a[15]; }

double Matrix4::max_abs() const {
    double m = 0.0;
    for (const auto& z : a) m = std::max(m, std::abs(z));
    return m;
}

Matrix4& Matrix4::operator+=(const Matrix4& o) {
    for (std::size_t k = 0; k < 16; ++k) a[k] += o.a[k];
    return *this;
}

Matrix4& Matrix4::operator-=(const Matrix4& o) {
    for (std::size_t k = 0; k < 16; ++k) a[k] -= o.a[k];
    return *this;
}

Matrix4& Matrix4::operator*=(cplx s) {
    for (auto& z : a) z *= s;
    return *this;
}

Matrix4 operator+(Matrix4 l, const Matrix4& r) { return l += r; }
Matrix4 operator-(Matrix4 l, const Matrix4& r) { return l -= r; }
Matrix4 operator*(cplx s, Matrix4 m) { return m *= s; }

Matrix4 operator*(const Matrix4& l, const Matrix4& r) {
    Matrix4 out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) {
            const cplx lik = l(i, k);
            if (lik == cplx{}) continue;
            for (std::size_t j = 0; j < 4; ++j) out(i, j) += lik * r(k, j);
        }
    return out;
}

double max_abs_diff(const Matrix4& l, const Matrix4& r) {
    double m = 0.0;
    for (std::size_t k = 0; k < 16; ++k) m = std::max(m, std::abs(l.a[k] - r.a[k]));
    return m;
}

double hermiticity_deviation(const Matrix4& m) {
    double dev = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev;
}

// ---------------------------------------------------------------------------

PureState::PureState(const Amplitudes& amplitudes) : amp_(amplitudes) {
    double n2 = 0.0;
    for (const auto& z : amp_) n2 += std::norm(z);
    if (!(std::abs(n2 - 1.0) <= 1e-9)) {
        throw InvalidArgument("state not normalized: |psi|^2 = " + sci(n2));
    }
}

cplx PureState::inner(const PureState& other) const {
    cplx s{};
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(amp_[i]) * other.amp_[i];
    return s;
}

// ---------------------------------------------------------------------------

namespace {

Matrix4 hermitian_part_upper(const Matrix4& m) {
    Matrix4 h;
    for (std::size_t i = 0; i < 4; ++i) {
        h(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < 4; ++j) {
            h(i, j) = m(i, j);
            h(j, i) = std::conj(m(i, j));
        }
    }
    return h;
}

std::array<double, 4> hermitian_eigenvalues(const Matrix4& h) {
    linalg::CMatrix4<double> a;
    std::copy(h.a.begin(), h.a.end(), a.begin());
    const auto ev = linalg::eigenvalues(a);
    std::array<double, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = ev[i].real();
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

DensityMatrix::DensityMatrix() {
    for (std::size_t i = 0; i < 4; ++i) m_(i, i) = 0.25;
}

DensityMatrix::DensityMatrix(const Matrix4& m, NoCheck) : m_(hermitian_part_upper(m)) {}

DensityMatrix::DensityMatrix(const Matrix4& m) : DensityMatrix(m, Tolerances{}) {}

DensityMatrix::DensityMatrix(const Matrix4& m, const Tolerances& tol) : m_(hermitian_part_upper(m)) {
    const double herm = hermiticity_deviation(m);
    if (!(herm <= tol.hermiticity)) {
        throw UnphysicalState("density matrix not Hermitian: deviation " + sci(herm));
    }
    const double tr = m_.trace().real();
    if (!(std::abs(tr - 1.0) <= tol.trace)) {
        throw UnphysicalState("density matrix trace " + sci(tr) + " != 1");
    }
    const double min_ev = hermitian_eigenvalues(m_)[0];
    if (!(min_ev >= -tol.positivity)) {
        throw UnphysicalState("density matrix not positive: eigenvalue " + sci(min_ev));
    }
}

DensityMatrix DensityMatrix::unchecked(const Matrix4& m) { return DensityMatrix(m, NoCheck{}); }

DensityMatrix::Diagnostics DensityMatrix::diagnose(const Matrix4& m) {
    Diagnostics d;
    d.hermiticity_deviation = hermiticity_deviation(m);
    const Matrix4 h = hermitian_part_upper(m);
    d.trace_deviation = std::abs(h.trace().real() - 1.0);
    d.min_eigenvalue = hermitian_eigenvalues(h)[0];
    return d;
}

std::array<double, 4> DensityMatrix::eigenvalues() const { return hermitian_eigenvalues(m_); }

// ---------------------------------------------------------------------------

SystemParams SystemParams::free(double omega0, double J, double gamma) {
    SystemParams p;
    p.omega0 = omega0;
    p.J = J;
    p.gamma = gamma;
    p.driven = false;
    return p;
}

SystemParams SystemParams::driven_field(double delta_l, double J, double Omega, double gamma,
                                        double omega0) {
    SystemParams p;
    p.omega0 = omega0;
    p.delta_l = delta_l;
    p.J = J;
    p.Omega = Omega;
    p.gamma = gamma;
    p.driven = true;
    return p;
}

void SystemParams::validate() const {
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(omega0) || !finite(delta_l) || !finite(J) || !finite(Omega) || !finite(gamma)) {
        throw InvalidArgument("system parameters must be finite");
    }
    if (omega0 < 0 || J < 0 || Omega < 0 || gamma < 0) {
        throw InvalidArgument("rates omega0, J, Omega, gamma must be >= 0");
    }
    if (!driven && Omega != 0.0) {
        throw InvalidArgument("Omega must be 0 for free (undriven) evolution");
    }
}

double SystemParams::fastest_rate() const noexcept {
    return std::max({std::abs(splitting()), J, Omega, gamma});
}

// ---------------------------------------------------------------------------

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const cplx kI{0.0, 1.0};

struct NamedEntry {
    std::string_view name;
    PureState::Amplitudes amp;
};

const std::array<NamedEntry, 14>& named_table() {
    static const std::array<NamedEntry, 14> table{{
        {"g1g2", {1.0, 0.0, 0.0, 0.0}},
        {"g1e2", {0.0, 1.0, 0.0, 0.0}},
        {"e1g2", {0.0, 0.0, 1.0, 0.0}},
        {"e1e2", {0.0, 0.0, 0.0, 1.0}},
        {"a", {0.0, kInvSqrt2, -kInvSqrt2, 0.0}},
        {"s", {0.0, kInvSqrt2, kInvSqrt2, 0.0}},
        {"p", {kInvSqrt2, 0.0, 0.0, kInvSqrt2}},
        {"q", {kInvSqrt2, 0.0, 0.0, -kInvSqrt2}},
        {"f", {0.0, kInvSqrt2, kI * kInvSqrt2, 0.0}},
        {"k", {0.0, kInvSqrt2, -kI * kInvSqrt2, 0.0}},
        // Localized products; signs as in |L1R2> = (|1> + |2> - |3> - |4>)/2.
        {"L1L2", {0.5, 0.5, 0.5, 0.5}},
        {"R1R2", {0.5, -0.5, -0.5, 0.5}},
        {"L1R2", {0.5, 0.5, -0.5, -0.5}},
        {"R1L2", {0.5, -0.5, 0.5, -0.5}},
    }};
    return table;
}

const std::array<std::string_view, 14>& name_list() {
    static const std::array<std::string_view, 14> names = [] {
        std::array<std::string_view, 14> n{};
        for (std::size_t i = 0; i < 14; ++i) n[i] = named_table()[i].name;
        return n;
    }();
    return names;
}

}  // namespace

std::span<const std::string_view> named_state_names() { return name_list(); }

PureState named_state(std::string_view name) {
    for (const auto& e : named_table()) {
        if (e.name == name) return PureState(e.amp);
    }
    std::string msg = "unknown state '" + std::string(name) + "'; valid names:";
    for (auto n : name_list()) {
        msg += ' ';
        msg += n;
    }
    throw InvalidArgument(msg);
}

const Matrix4& entangled_transform() {
    static const Matrix4 m = [] {
        Matrix4 t;
        const std::array<std::string_view, 4> rows{"p", "s", "a", "q"};
        for (std::size_t r = 0; r < 4; ++r) {
            const auto st = named_state(rows[r]);
            for (std::size_t c = 0; c < 4; ++c) t(r, c) = std::conj(st[c]);
        }
        return t;
    }();
    return m;
}

DensityMatrix pure_density(const PureState& state) {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = state[i] * std::conj(state[j]);
    return DensityMatrix(m);
}

DensityMatrix pure_density(const PureState::Amplitudes& amplitudes) {
    return pure_density(PureState(amplitudes));
}

DensityMatrix to_entangled_basis(const DensityMatrix& rho) {
    const Matrix4& m = entangled_transform();
    return DensityMatrix::unchecked(m * rho.matrix() * m.adjoint());
}

DensityMatrix from_entangled_basis(const DensityMatrix& rho_e) {
    const Matrix4& m = entangled_transform();
    return DensityMatrix::unchecked(m.adjoint() * rho_e.matrix() * m);
}

double expectation(const Matrix4& rho, const PureState& state) {
    cplx s{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) s += std::conj(state[i]) * rho(i, j) * state[j];
    return s.real();
}

double population(const DensityMatrix& rho, const PureState& state) {
    const double v = expectation(rho.matrix(), state);
    constexpr double kSlack = 1e-9;
    if (v < -kSlack || v > 1.0 + kSlack || !std::isfinite(v)) {
        throw UnphysicalState("population " + sci(v) + " outside [0, 1]");
    }
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace molent
