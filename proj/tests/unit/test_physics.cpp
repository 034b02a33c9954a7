#include <doctest.h>

#include <cmath>
#include <random>

#include "molent/error.hpp"
#include "molent/physics.hpp"

using namespace molent;
using namespace molent::physics;

namespace {
MolecularConstants mol(double d0_debye, double r_nm, double E = 0) {
    MolecularConstants m;
    m.d0 = d0_debye * kDebye;
    m.mu_eg = m.d0;
    m.r = r_nm * 1e-9;
    m.E_l = E;
    return m;
}
}  // namespace

TEST_CASE("constants are CODATA") {
    CHECK(PhysicalConstants::hbar == doctest::Approx(1.054571817e-34).epsilon(1e-9));
    CHECK(PhysicalConstants::epsilon0 == doctest::Approx(8.8541878128e-12).epsilon(1e-9));
    CHECK(PhysicalConstants::c == 299792458.0);
}

TEST_CASE("dipole coupling") {
    const double J10 = dipole_coupling(mol(1.46, 10));
    CHECK(std::abs(J10 / 4.0e9 - 1) < 0.05);
    // Independent evaluation: 2 (1.46 * 3.33564e-30)^2 / (4 pi 8.8541878128e-12 * 1.054571817e-34 * 1e-24)
    CHECK(J10 == doctest::Approx(4.0425862897e9).epsilon(1e-9));
    CHECK(dipole_coupling(mol(1.46, 20)) == J10 / 8);
    CHECK(dipole_coupling(mol(1.46, 20)) == doctest::Approx(5.0532328621e8).epsilon(1e-9));
    CHECK_THROWS_AS(dipole_coupling(mol(1.46, 0)), InvalidArgument);
}

TEST_CASE("dipole coupling monotonicity") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.1, 5.0), r(1.0, 100.0);
    for (int i = 0; i < 200; ++i) {
        const double d0 = d(rng), r0 = r(rng);
        CHECK(dipole_coupling(mol(d0, r0 * 1.01)) < dipole_coupling(mol(d0, r0)));
        CHECK(dipole_coupling(mol(d0 * 1.01, r0)) > dipole_coupling(mol(d0, r0)));
    }
}

TEST_CASE("einstein A") {
    const double mu = 1.46 * kDebye;
    const double a1 = einstein_a(mu, 1.5e11), a2 = einstein_a(mu, 6.78e12);
    // Independent evaluation of |mu|^2 w^3 / (3 pi hbar eps0 c^3).
    CHECK(a1 == doctest::Approx(3.3758233e-7).epsilon(1e-7));
    CHECK(a2 == doctest::Approx(3.1174178e-2).epsilon(1e-7));
    CHECK(std::floor(std::log10(a1)) == -7);
    CHECK(std::floor(std::log10(a2)) == -2);
    CHECK(einstein_a(0.0, 1.5e11) == 0.0);
    CHECK_THROWS_AS(einstein_a(mu, 0.0), InvalidArgument);
    CHECK(a1 / dipole_coupling(mol(1.46, 10)) < 1e-15);
}

TEST_CASE("rabi frequency") {
    const double mu = 1.46 * kDebye;
    CHECK(rabi_frequency(mu, 0.0) == 0.0);
    const double E = 7e7 * 2 * PhysicalConstants::hbar / mu;
    CHECK(std::abs(rabi_frequency(mu, E) / 7e7 - 1) < 1e-9);
    CHECK(rabi_frequency(mu, 2 * E) == doctest::Approx(2 * rabi_frequency(mu, E)).epsilon(1e-15));
}

TEST_CASE("molecular constants validation") {
    CHECK_THROWS_AS(mol(0, 10).validate(), InvalidArgument);
    CHECK_THROWS_AS(mol(1.46, -1).validate(), InvalidArgument);
    CHECK_THROWS_AS(mol(1.46, 10, -1).validate(), InvalidArgument);
    CHECK_NOTHROW(mol(1.46, 10, 0).validate());
}
