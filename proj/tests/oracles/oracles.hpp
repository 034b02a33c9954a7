#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical code; inputs and outputs are plain arrays.

#include <array>
#include <complex>

namespace oracle {

using LD = long double;
using C = std::complex<LD>;
using M4 = std::array<std::array<C, 4>, 4>;

/// Concurrence from the characteristic polynomial of rho * rho_tilde
/// (Faddeev-LeVerrier), roots by Durand-Kerner, near-equal roots averaged.
/// rho_tilde is built as (sy (x) sy) rho* (sy (x) sy) from Pauli matrices.
LD concurrence(const M4& rho);

/// Eigenvalues of rho * rho_tilde, real parts, decreasing.
std::array<LD, 4> spin_flip_spectrum(const M4& rho);

struct Rates {
    LD splitting;  // diagonal -D, 0, 0, +D
    LD J;
    LD Omega;
    LD gamma;
};

/// exp(L t) applied to rho, with L the 16x16 Lindblad superoperator assembled
/// from Kronecker products of Pauli matrices; Taylor series with scaling and
/// squaring in long double.
M4 evolve(const M4& rho, const Rates& r, LD t);

}  // namespace oracle
