#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace molent {

using cplx = std::complex<double>;

inline constexpr std::size_t kDim = 4;

/// Dense 4x4 complex matrix, row-major.
struct Matrix4 {
    std::array<cplx, 16> a{};

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * 4 + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * 4 + j]; }

    static Matrix4 identity();
    static Matrix4 zero() { return {}; }

    Matrix4 adjoint() const;
    Matrix4 conjugate() const;
    cplx trace() const;
    double max_abs() const;

    Matrix4& operator+=(const Matrix4& o);
    Matrix4& operator-=(const Matrix4& o);
    Matrix4& operator*=(cplx s);
};

Matrix4 operator+(Matrix4 l, const Matrix4& r);
Matrix4 operator-(Matrix4 l, const Matrix4& r);
Matrix4 operator*(const Matrix4& l, const Matrix4& r);
Matrix4 operator*(cplx s, Matrix4 m);

/// Max-entry norm of l - r.
double max_abs_diff(const Matrix4& l, const Matrix4& r);

/// Largest |m(i,j) - conj(m(j,i))|.
double hermiticity_deviation(const Matrix4& m);

/// Normalized 4-amplitude state in the bare basis
/// |1> = |g1 g2>, |2> = |g1 e2>, |3> = |e1 g2>, |4> = |e1 e2>.
class PureState {
public:
    using Amplitudes = std::array<cplx, 4>;

    /// Throws InvalidArgument when the squared norm is off by more than 1e-9.
    explicit PureState(const Amplitudes& amplitudes);

    const Amplitudes& amplitudes() const noexcept { return amp_; }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }

    /// <this|other>
    cplx inner(const PureState& other) const;

private:
    Amplitudes amp_;
};

/// Hermitian 4x4 state of the pair. Stored Hermitian exactly: the lower
/// triangle is always the conjugate of the upper one and the diagonal is real.
class DensityMatrix {
public:
    struct Tolerances {
        double hermiticity = 1e-12;
        double trace = 1e-9;
        double positivity = 1e-9;
    };

    struct Diagnostics {
        double hermiticity_deviation = 0.0;  // of the raw input, before symmetrization
        double trace_deviation = 0.0;        // |tr - 1|
        double min_eigenvalue = 0.0;
    };

    /// Maximally mixed state I/4.
    DensityMatrix();

    /// Validates Hermiticity, unit trace and positivity against `tol`.
    explicit DensityMatrix(const Matrix4& m);
    DensityMatrix(const Matrix4& m, const Tolerances& tol);

    /// Hermitian part of `m` with no physical validation. Used for audit
    /// trajectories of generators that do not conserve trace or positivity.
    static DensityMatrix unchecked(const Matrix4& m);

    static Diagnostics diagnose(const Matrix4& m);

    const Matrix4& matrix() const noexcept { return m_; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    double trace() const { return m_.trace().real(); }

    /// Eigenvalues in increasing order.
    std::array<double, 4> eigenvalues() const;

private:
    struct NoCheck {};
    DensityMatrix(const Matrix4& m, NoCheck);

    Matrix4 m_;
};

/// Rate bundle of the pair Hamiltonian and dephasing, all in s^-1 (rad/s).
/// When `driven` is false the diagonal splitting uses omega0 and Omega must be 0.
struct SystemParams {
    double omega0 = 0.0;
    double delta_l = 0.0;
    double J = 0.0;
    double Omega = 0.0;
    double gamma = 0.0;
    bool driven = false;

    static SystemParams free(double omega0, double J, double gamma);
    static SystemParams driven_field(double delta_l, double J, double Omega, double gamma,
                                     double omega0 = 0.0);

    /// Throws InvalidArgument on negative rates or a field in the free case.
    void validate() const;

    /// Single-molecule splitting on the Hamiltonian diagonal: delta_l when
    /// driven (rotating frame), omega0 otherwise.
    double splitting() const noexcept { return driven ? delta_l : omega0; }

    /// Largest rate entering the generator (for step and time scaling).
    double fastest_rate() const noexcept;

    bool operator==(const SystemParams&) const = default;
};

/// Rows are (|p>, |s>, |a>, |q>) in the bare basis; unitary.
const Matrix4& entangled_transform();

/// Entangled-basis index of each row of entangled_transform().
enum class EntangledIndex : std::size_t { p = 0, s = 1, a = 2, q = 3 };

/// Names accepted by named_state().
std::span<const std::string_view> named_state_names();

/// g1g2, g1e2, e1g2, e1e2 (bare); a, s, p, q (Bell-type); f, k (|2> +- i|3>);
/// L1L2, R1R2, L1R2, R1L2 (localized products).
PureState named_state(std::string_view name);

/// |psi><psi|
DensityMatrix pure_density(const PureState& state);

/// Validates normalization of raw amplitudes (1e-9) before forming |psi><psi|.
DensityMatrix pure_density(const PureState::Amplitudes& amplitudes);

/// M rho M^dagger.
DensityMatrix to_entangled_basis(const DensityMatrix& rho);
/// M^dagger rho_E M.
DensityMatrix from_entangled_basis(const DensityMatrix& rho_e);

/// <psi|rho|psi> without clamping or validation.
double expectation(const Matrix4& rho, const PureState& state);

/// <psi|rho|psi> clamped into [0, 1]. Values outside [0, 1] by more than 1e-9
/// are rejected with UnphysicalState.
double population(const DensityMatrix& rho, const PureState& state);

}  // namespace molent
