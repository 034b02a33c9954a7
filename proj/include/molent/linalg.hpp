#pragma once

#include <array>
#include <complex>

namespace molent::linalg {

template <typename T>
using CMatrix4 = std::array<std::complex<T>, 16>;  // row-major

/// Reduces a general complex 4x4 matrix to upper Hessenberg form by
/// Householder reflections (similarity transform, eigenvalues preserved).
template <typename T>
CMatrix4<T> hessenberg(CMatrix4<T> a);

/// All eigenvalues of a general complex 4x4 matrix: Hessenberg reduction
/// followed by single-shift QR iteration with Wilkinson shifts and deflation.
/// Order is the deflation order (unsorted). Throws Error if the iteration does
/// not converge.
template <typename T>
std::array<std::complex<T>, 4> eigenvalues(const CMatrix4<T>& a);

extern template CMatrix4<double> hessenberg(CMatrix4<double>);
extern template CMatrix4<long double> hessenberg(CMatrix4<long double>);
extern template std::array<std::complex<double>, 4> eigenvalues(const CMatrix4<double>&);
extern template std::array<std::complex<long double>, 4> eigenvalues(
    const CMatrix4<long double>&);

}  // namespace molent::linalg
