#include <doctest.h>

#include <cmath>

#include "../oracles/oracles.hpp"

using namespace oracle;

namespace {

M4 pure(const std::array<C, 4>& a) {
    M4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i][j] = a[i] * std::conj(a[j]);
    return r;
}

}  // namespace

TEST_CASE("oracle concurrence on textbook states") {
    const LD h = 1 / std::sqrt(LD(2));
    CHECK(std::abs(concurrence(pure({1, 0, 0, 0}))) < 1e-9L);
    CHECK(std::abs(concurrence(pure({0, h, h, 0})) - 1) < 1e-9L);
    CHECK(std::abs(concurrence(pure({h, 0, 0, h})) - 1) < 1e-9L);
    for (const LD p : {LD(0), LD(1) / 3, LD(0.6), LD(1)}) {
        M4 w{};
        const M4 s = pure({0, h, h, 0});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) w[i][j] = p * s[i][j] + (i == j ? (1 - p) / 4 : 0);
        CHECK(std::abs(concurrence(w) - std::max(LD(0), (3 * p - 1) / 2)) < 1e-9L);
    }
}

TEST_CASE("oracle propagator reproduces the free exchange") {
    // |3> with J only: rho33 = cos^2(J t).
    M4 r{};
    r[2][2] = 1;
    const LD J = 4e9L, t = 0.3e-9L;
    const M4 out = evolve(r, {0, J, 0, 0}, t);
    CHECK(std::abs(out[2][2].real() - std::pow(std::cos(J * t), 2)) < 1e-15L);
    CHECK(std::abs(out[1][1].real() - std::pow(std::sin(J * t), 2)) < 1e-15L);

    // Dephasing alone: rho14 decays at 2 gamma, rho12 at gamma.
    M4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = 0.25L;
    const LD g = 1e6L, tt = 1e-6L;
    const M4 d = evolve(c, {0, 0, 0, g}, tt);
    CHECK(std::abs(d[0][3].real() - 0.25L * std::exp(-2 * g * tt)) < 1e-15L);
    CHECK(std::abs(d[0][1].real() - 0.25L * std::exp(-g * tt)) < 1e-15L);
    CHECK(std::abs(d[0][0].real() - 0.25L) < 1e-15L);
}
