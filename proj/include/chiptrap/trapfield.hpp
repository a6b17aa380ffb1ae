#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "chiptrap/constants.hpp"

namespace chiptrap::trapfield {

struct SpeciesConstants {
    std::string name = "Rb87";
    double mass = constants::rb87_mass_amu * constants::atomic_mass_unit;  // kg
    double mu_b = constants::mu_bohr;                                      // J/T
    double hbar = constants::hbar;                                         // J s

    void validate() const;
    static SpeciesConstants rb87() { return SpeciesConstants{}; }
};

// Thin current-carrying wire along z plus a homogeneous bias field
// (B0/sqrt(2), -B0/sqrt(2), B_z). All SI.
struct WireBiasField {
    double current = 1.0;       // A
    double b0 = 1.0e-3;         // T, in-plane bias magnitude
    double bz = 1.0e-4;         // T, axial bias

    double xi() const { return constants::mu0 * current / (2.0 * constants::pi); }
    void validate() const;
};

struct TrapGeometry {
    double x0 = 0.0;        // m
    double y0 = 0.0;        // m
    double gradient = 0.0;  // T/m, in-plane field gradient G
    double omega_t = 0.0;   // rad/s, trap angular frequency
    double ell_t = 0.0;     // m, harmonic length
    double omega_l = 0.0;   // rad/s, Larmor angular frequency
    double rho_sq = 0.0;    // omega_t / omega_l
};

struct FieldAngles {
    double alpha = 0.0;  // polar tilt of B from the z axis
    double beta = 0.0;   // azimuthal phase, beta = -theta on the linearized field
    double magnitude = 0.0;
};

// Total field of wire + bias at (x, y); throws std::domain_error at the wire.
Eigen::Vector3d total_field(const WireBiasField& field, double x, double y);

// Analytic minimum of |B|; throws if the wire current vanishes.
std::pair<double, double> trap_minimum(const WireBiasField& field);

// In-plane gradient G = B0^2/xi at the minimum.
double gradient(const WireBiasField& field);

// Field of the linearization (G*x, -G*y, B_z) in local coordinates.
Eigen::Vector3d linearized_field(const WireBiasField& field, double x, double y);

FieldAngles field_angles(const Eigen::Vector3d& b);

// V(r) = (1/rho^2) sqrt(1 + rho^2 r^2), harmonic units.
double dimensionless_potential(double rho, double r);

// Large-r regularization: V_scatt -> 1/(h*rho) instead of r/rho.
double regularized_potential(double rho, double h_reg, double r);

TrapGeometry harmonic_units(const WireBiasField& field, const SpeciesConstants& species);

// Recover (G [T/m], B_z [T]) from a TrapGeometry; inverse of harmonic_units.
std::pair<double, double> invert_harmonic_units(const TrapGeometry& geometry,
                                                const SpeciesConstants& species);

}  // namespace chiptrap::trapfield
