#pragma once

#include <array>

#include "molent/qcore.hpp"

namespace molent {

/// Wootters concurrence together with the spectrum it was computed from.
struct ConcurrenceResult {
    double value = 0.0;
    /// Square roots of the eigenvalues of rho * rho_tilde, decreasing.
    std::array<double, 4> lambdas{};
    /// Set when small negative eigenvalues (>= -1e-9) were clamped to 0.
    bool clamped = false;
};

/// sigma_y (x) sigma_y in the bare basis: anti-diagonal (-1, 1, 1, -1).
const Matrix4& sigma_yy();

/// rho_tilde = (sy (x) sy) rho* (sy (x) sy)
Matrix4 spin_flip(const DensityMatrix& rho);

/// C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots of the
/// eigenvalues of rho * rho_tilde. The product is formed and reduced in
/// extended precision (Hessenberg + shifted QR).
/// Throws UnphysicalState if an eigenvalue has |Im| > 1e-9 or Re < -1e-9.
ConcurrenceResult concurrence(const DensityMatrix& rho);

}  // namespace molent
