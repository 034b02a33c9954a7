#pragma once

namespace molent::physics {

/// CODATA 2018 SI values.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;       // J s
    static constexpr double epsilon0 = 8.8541878128e-12;  // F/m
    static constexpr double c = 299792458.0;               // m/s
};

/// 1 D in C m.
inline constexpr double kDebye = 3.33564e-30;

/// Molecular inputs, SI units. mu_eg is the transition dipole magnitude,
/// equal to d0 for the inversion doublet.
struct MolecularConstants {
    double d0 = 0.0;     // C m
    double mu_eg = 0.0;  // C m
    double r = 0.0;      // m
    double E_l = 0.0;    // V/m

    /// Throws InvalidArgument unless d0 > 0, r > 0, E_l >= 0.
    void validate() const;
};

/// Dipole-dipole exchange rate J = 2 d0^2 / (4 pi eps0 hbar r^3) for parallel dipoles.
double dipole_coupling(const MolecularConstants& constants);

/// Einstein A = |mu|^2 w0^3 / (3 pi hbar eps0 c^3).
double einstein_a(double mu_eg, double omega0);

/// Omega = |mu| E_l / (2 hbar), dipoles parallel to the field.
double rabi_frequency(double mu_eg, double E_l);

}  // namespace molent::physics
