#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "../oracles/oracles.hpp"
#include "molent/qcore.hpp"

namespace th {

using molent::cplx;
using molent::DensityMatrix;
using molent::Matrix4;

/// G G^dagger / tr with G complex Gaussian; full rank almost surely.
inline DensityMatrix random_density(std::mt19937_64& rng, int rank = 4) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix4 g;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(rank); ++j) g(i, j) = cplx(n(rng), n(rng));
    Matrix4 r = g * g.adjoint();
    const double tr = r.trace().real();
    r *= cplx(1.0 / tr);
    return DensityMatrix(r);
}

inline Matrix4 random_unitary2(std::mt19937_64& rng, bool first) {
    // U = exp(i a) [[c e^{ib}, s e^{ic}], [-s e^{-ic}, c e^{-ib}]] embedded on one molecule.
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    const double th = u(rng) / 4, a = u(rng), b = u(rng), c = u(rng);
    const cplx I(0, 1);
    const cplx m[2][2] = {{std::exp(I * (a + b)) * std::cos(th), std::exp(I * (a + c)) * std::sin(th)},
                          {-std::exp(I * (a - c)) * std::sin(th), std::exp(I * (a - b)) * std::cos(th)}};
    Matrix4 out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t i1 = i / 2, i2 = i % 2, j1 = j / 2, j2 = j % 2;
            out(i, j) = first ? (i2 == j2 ? m[i1][j1] : 0.0) : (i1 == j1 ? m[i2][j2] : 0.0);
        }
    return out;
}

inline oracle::M4 to_oracle(const Matrix4& m) {
    oracle::M4 r{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i][j] = oracle::C(m(i, j).real(), m(i, j).imag());
    return r;
}

inline double max_diff(const oracle::M4& a, const Matrix4& b) {
    double d = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            d = std::max(d, std::abs(cplx(static_cast<double>(a[i][j].real()), static_cast<double>(a[i][j].imag())) - b(i, j)));
    return d;
}

}  // namespace th
