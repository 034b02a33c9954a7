#include "molent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "molent/error.hpp"
#include "molent/linalg.hpp"

namespace molent {
namespace {

constexpr double kSpectrumSlack = 1e-9;

}  // namespace

const Matrix4& sigma_yy() {
    static const Matrix4 m = [] {
        Matrix4 s;
        s(0, 3) = -1.0;
        s(1, 2) = 1.0;
        s(2, 1) = 1.0;
        s(3, 0) = -1.0;
        return s;
    }();
    return m;
}

Matrix4 spin_flip(const DensityMatrix& rho) {
    const Matrix4& y = sigma_yy();
    return y * rho.matrix().conjugate() * y;
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
    using LD = long double;
    using LC = std::complex<LD>;

    // rho * rho_tilde in extended precision. The flip only permutes entries and
    // changes signs, so rho_tilde(i, j) = s_i s_j conj(rho(3 - i, 3 - j)).
    constexpr std::array<LD, 4> sign{-1, 1, 1, -1};
    linalg::CMatrix4<LD> r{}, rt{}, prod{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const cplx z = rho(i, j);
            r[i * 4 + j] = LC(z.real(), z.imag());
            const cplx w = rho(3 - i, 3 - j);
            rt[i * 4 + j] = sign[i] * sign[j] * LC(w.real(), -w.imag());
        }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            LC s{};
            for (std::size_t k = 0; k < 4; ++k) s += r[i * 4 + k] * rt[k * 4 + j];
            prod[i * 4 + j] = s;
        }

    const auto ev = linalg::eigenvalues(prod);

    ConcurrenceResult out;
    std::array<LD, 4> roots{};
    for (std::size_t i = 0; i < 4; ++i) {
        const LD re = ev[i].real();
        const LD im = ev[i].imag();
        if (std::abs(im) > kSpectrumSlack) {
            throw UnphysicalState("rho*rho_tilde eigenvalue has imaginary part " +
                                  sci(static_cast<double>(im)));
        }
        if (re < -kSpectrumSlack) {
            throw UnphysicalState("rho*rho_tilde eigenvalue is negative: " +
                                  sci(static_cast<double>(re)));
        }
        if (re < 0) out.clamped = true;
        roots[i] = std::sqrt(std::max(re, LD(0)));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    for (std::size_t i = 0; i < 4; ++i) out.lambdas[i] = static_cast<double>(roots[i]);
    const LD c = roots[0] - roots[1] - roots[2] - roots[3];
    out.value = static_cast<double>(std::max(c, LD(0)));
    return out;
}

}  // namespace molent
