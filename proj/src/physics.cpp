#include "molent/physics.hpp"

#include <cmath>
#include <numbers>

#include "molent/error.hpp"

namespace molent::physics {

using K = PhysicalConstants;

void MolecularConstants::validate() const {
    if (!(d0 > 0.0)) throw InvalidArgument("d0 must be > 0");
    if (!(r > 0.0)) throw InvalidArgument("r must be > 0 (dipole coupling diverges at r = 0)");
    if (!(E_l >= 0.0)) throw InvalidArgument("E_l must be >= 0");
    if (!(mu_eg >= 0.0)) throw InvalidArgument("mu_eg must be >= 0");
}

double dipole_coupling(const MolecularConstants& constants) {
    if (!(constants.r > 0.0)) throw InvalidArgument("r must be > 0 (dipole coupling diverges at r = 0)");
    if (!(constants.d0 > 0.0)) throw InvalidArgument("d0 must be > 0");
    const double r3 = constants.r * constants.r * constants.r;
    const double v = 2.0 * constants.d0 * constants.d0 / (4.0 * std::numbers::pi * K::epsilon0 * r3);
    return v / K::hbar;
}

double einstein_a(double mu_eg, double omega0) {
    if (!(omega0 > 0.0)) throw InvalidArgument("omega0 must be > 0");
    const double mu2 = mu_eg * mu_eg;
    return mu2 * omega0 * omega0 * omega0 /
           (3.0 * std::numbers::pi * K::hbar * K::epsilon0 * K::c * K::c * K::c);
}

double rabi_frequency(double mu_eg, double E_l) {
    if (!(E_l >= 0.0)) throw InvalidArgument("E_l must be >= 0");
    return std::abs(mu_eg) * E_l / (2.0 * K::hbar);
}

}  // namespace molent::physics
