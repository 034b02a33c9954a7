#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "molent/qcore.hpp"

namespace molent {

/// Which right-hand side for d(rho)/dt.
///  derived:   -i[H, rho] + L_d(rho) composed from the Hamiltonian and the
///             dephasing dissipator.
///  published: the ten explicit element equations of the reference model,
///             transcribed verbatim (rho44 by trace closure).
enum class RhsVariant { derived, published };

std::string_view variant_name(RhsVariant v);
RhsVariant parse_variant(std::string_view name);

/// H / hbar in rad/s. Diagonal (-D, 0, 0, +D) with D = params.splitting(),
/// J on (2,3), Omega on every single-flip pair.
Matrix4 hamiltonian(const SystemParams& params);

/// Pure-dephasing dissipator -gamma/4 sum_k (sz_k sz_k rho + rho sz_k sz_k - 2 sz_k rho sz_k).
Matrix4 dephasing(const Matrix4& rho, double gamma);
Matrix4 dephasing(const DensityMatrix& rho, double gamma);

/// How the published system closes the rho44 equation.
enum class Rho44Line {
    closure,      // d rho44 = -(d rho11 + d rho22 + d rho33), as published
    hamiltonian,  // d rho44 = -i Omega (rho24 + rho34 - rho42 - rho43); exposes trace drift
};

Matrix4 derived_rhs(const Matrix4& rho, const SystemParams& params);
Matrix4 published_rhs(const Matrix4& rho, const SystemParams& params,
                      Rho44Line line = Rho44Line::closure);

/// d(rho)/dt for `variant` (published uses the trace closure).
Matrix4 rhs(RhsVariant variant, const DensityMatrix& rho, const SystemParams& params);
Matrix4 rhs(RhsVariant variant, const Matrix4& rho, const SystemParams& params);

/// Real packing of a density matrix for the propagator.
///  full:      32 reals, Re then Im of all 16 entries (row-major).
///  hermitian: 16 reals, the 4 diagonal populations then (Re, Im) of the
///             upper entries 12, 13, 14, 23, 24, 34. The lower triangle is
///             never stored; it is the conjugate of the upper one.
enum class Layout { full, hermitian };

std::size_t packed_size(Layout layout);
std::vector<double> pack(const Matrix4& rho, Layout layout);
Matrix4 unpack(std::span<const double> x, Layout layout);

/// Dense real-linear representation of a right-hand side on a packed state,
/// with time measured in units of 1 / time_scale.
class Generator {
public:
    Generator(Layout layout, std::vector<double> column_major, double time_scale);

    Layout layout() const noexcept { return layout_; }
    std::size_t size() const noexcept { return n_; }
    double time_scale() const noexcept { return time_scale_; }
    std::span<const double> matrix() const noexcept { return a_; }

    /// y = G x in scaled time, using the active kernel backend.
    void apply(std::span<const double> x, std::span<double> y) const;

private:
    Layout layout_;
    std::size_t n_;
    std::vector<double> a_;
    double time_scale_;
};

/// Builds the generator of `variant` by probing the right-hand side with unit
/// packed vectors. derived uses the full layout, published the hermitian one.
Generator make_generator(RhsVariant variant, const SystemParams& params, double time_scale,
                         Rho44Line line = Rho44Line::closure);

}  // namespace molent
