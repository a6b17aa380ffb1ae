#include "chiptrap/expmap.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chiptrap/constants.hpp"

namespace chiptrap::expmap {

ConversionCoefficients ConversionCoefficients::from_constants(
    const trapfield::SpeciesConstants& species) {
    species.validate();
    ConversionCoefficients c;
    const double gauss = constants::tesla_per_gauss;
    // omega_T = sqrt(mu_B/M) G / sqrt(B_z), omega_T/omega_L = hbar G /
    // (sqrt(mu_B M) B_z^{3/2}), converted to B_z in Gauss.
    c.nu_coef = std::sqrt(species.mu_b / species.mass) / std::sqrt(gauss) /
                (2.0 * constants::pi);
    c.ratio_coef = species.hbar / std::sqrt(species.mu_b * species.mass) /
                   std::pow(gauss, 1.5);
    return c;
}

ExperimentalPoint to_experimental(const resonance::Resonance& res, double rho_sq,
                                  double bz_gauss, const ConversionCoefficients& coeffs,
                                  std::optional<double> splitting_num) {
    if (bz_gauss <= 0.0) throw std::invalid_argument("B_z must be positive");
    if (rho_sq <= 0.0) throw std::invalid_argument("rho_sq must be positive");

    ExperimentalPoint point;
    point.bz_gauss = bz_gauss;
    point.omega_ratio = rho_sq;
    point.gradient = rho_sq * std::pow(bz_gauss, 1.5) / coeffs.ratio_coef;
    point.nu_t = coeffs.nu_coef * point.gradient / std::sqrt(bz_gauss);
    point.e_num = res.energy;
    point.gamma_num = res.gamma;
    point.nu_exp = point.nu_t * res.energy;
    point.stable = res.gamma <= 0.0 || res.below_floor;
    point.lifetime = point.stable ? std::numeric_limits<double>::infinity()
                                  : 1.0 / (point.nu_t * res.gamma);
    point.splitting = splitting_num ? point.nu_t * *splitting_num : 0.0;
    return point;
}

std::pair<double, double> from_experimental(const ExperimentalPoint& point,
                                            const ConversionCoefficients& coeffs) {
    if (point.bz_gauss <= 0.0) throw std::invalid_argument("B_z must be positive");
    const double rho_sq =
        coeffs.ratio_coef * point.gradient / std::pow(point.bz_gauss, 1.5);
    const double gamma_num =
        point.stable ? 0.0 : 1.0 / (point.lifetime * point.nu_t);
    return {rho_sq, gamma_num};
}

std::vector<ExperimentalPoint> bias_scan(const resonance::Resonance& res, double rho_sq,
                                         const std::vector<double>& bz_gauss_list,
                                         const ConversionCoefficients& coeffs,
                                         std::optional<double> splitting_num) {
    std::vector<ExperimentalPoint> points;
    points.reserve(bz_gauss_list.size());
    for (double bz : bz_gauss_list)
        points.push_back(to_experimental(res, rho_sq, bz, coeffs, splitting_num));
    return points;
}

}  // namespace chiptrap::expmap
