#pragma once

#include <optional>
#include <vector>

#include "chiptrap/resonance.hpp"
#include "chiptrap/trapfield.hpp"

namespace chiptrap::expmap {

// Collapsed Rb-87 conversion coefficients with B_z in Gauss and G in T/m:
//   nu_T = nu_coef * G / sqrt(B_z)          [Hz]
//   omega_T/omega_L = ratio_coef * G / B_z^{3/2}
struct ConversionCoefficients {
    double nu_coef = 129.47;
    double ratio_coef = 9.25e-5;

    // Reference values used for table/figure reproduction.
    static ConversionCoefficients tabulated() { return {}; }
    // Recomputed from the species constants (differs from the tabulated
    // values by about 1.5%).
    static ConversionCoefficients from_constants(const trapfield::SpeciesConstants& species);
};

struct ExperimentalPoint {
    double bz_gauss = 0.0;
    double gradient = 0.0;     // T/m
    double nu_t = 0.0;         // Hz
    double omega_ratio = 0.0;  // omega_T / omega_L
    double lifetime = 0.0;     // s, infinite when stable
    double splitting = 0.0;    // Hz, 0 when not supplied
    double nu_exp = 0.0;       // Hz, nu_T * E_num
    double e_num = 0.0;
    double gamma_num = 0.0;
    bool stable = false;       // zero numerical width
};

// Map one dimensionless resonance to Rb-87 observables at bias field
// B_z (Gauss). The gradient realizing omega_ratio = rho_sq is solved from
// the ratio relation; lifetime is 2 pi / Gamma_exp = 1 / (nu_T Gamma_num).
ExperimentalPoint to_experimental(const resonance::Resonance& res, double rho_sq,
                                  double bz_gauss,
                                  const ConversionCoefficients& coeffs = {},
                                  std::optional<double> splitting_num = std::nullopt);

// Recover (rho_sq, Gamma_num) from an ExperimentalPoint; inverse of the
// mapping above.
std::pair<double, double> from_experimental(const ExperimentalPoint& point,
                                            const ConversionCoefficients& coeffs = {});

// Lifetime and gradient versus B_z at fixed rho_sq (the dimensionless
// resonance data do not depend on B_z; only the unit mapping varies).
std::vector<ExperimentalPoint> bias_scan(const resonance::Resonance& res, double rho_sq,
                                         const std::vector<double>& bz_gauss_list,
                                         const ConversionCoefficients& coeffs = {},
                                         std::optional<double> splitting_num = std::nullopt);

}  // namespace chiptrap::expmap
