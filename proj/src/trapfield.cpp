#include "chiptrap/trapfield.hpp"

#include <cmath>
#include <stdexcept>

namespace chiptrap::trapfield {

void SpeciesConstants::validate() const {
    if (mass <= 0.0 || mu_b <= 0.0 || hbar <= 0.0)
        throw std::invalid_argument("species constants must be positive");
}

void WireBiasField::validate() const {
    if (current <= 0.0) throw std::invalid_argument("wire current must be positive");
    if (b0 <= 0.0) throw std::invalid_argument("in-plane bias B0 must be positive");
    if (bz <= 0.0) throw std::invalid_argument("axial bias B_z must be positive");
}

Eigen::Vector3d total_field(const WireBiasField& field, double x, double y) {
    const double r2 = x * x + y * y;
    if (r2 == 0.0) throw std::domain_error("field is singular on the wire (x,y)=(0,0)");
    const double s = field.b0 / std::sqrt(2.0);
    const double xi = field.xi();
    return {s - xi * y / r2, -s + xi * x / r2, field.bz};
}

std::pair<double, double> trap_minimum(const WireBiasField& field) {
    field.validate();
    const double xi = field.xi();
    if (xi <= 0.0) throw std::domain_error("no field minimum without wire current");
    const double x0 = xi / (std::sqrt(2.0) * field.b0);
    return {x0, x0};
}

double gradient(const WireBiasField& field) {
    field.validate();
    return field.b0 * field.b0 / field.xi();
}

Eigen::Vector3d linearized_field(const WireBiasField& field, double x, double y) {
    const double g = gradient(field);
    return {g * x, -g * y, field.bz};
}

FieldAngles field_angles(const Eigen::Vector3d& b) {
    FieldAngles angles;
    angles.magnitude = b.norm();
    const double planar = std::hypot(b.x(), b.y());
    angles.alpha = std::atan2(planar, b.z());
    // Branch with the discontinuity on the negative x axis; equals -theta on
    // the linearized field (G*x, -G*y, B_z).
    angles.beta = std::atan2(b.y(), b.x());
    return angles;
}

double dimensionless_potential(double rho, double r) {
    if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
    if (r < 0.0) throw std::invalid_argument("r must be non-negative");
    return std::sqrt(1.0 + rho * rho * r * r) / (rho * rho);
}

double regularized_potential(double rho, double h_reg, double r) {
    if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
    if (h_reg <= 0.0) throw std::invalid_argument("h_reg must be positive");
    const double r2 = r * r;
    return std::sqrt(1.0 + rho * rho * r2 / (1.0 + h_reg * h_reg * r2)) / (rho * rho);
}

TrapGeometry harmonic_units(const WireBiasField& field, const SpeciesConstants& species) {
    field.validate();
    species.validate();
    TrapGeometry geo;
    std::tie(geo.x0, geo.y0) = trap_minimum(field);
    geo.gradient = gradient(field);
    geo.omega_t = std::sqrt(species.mu_b * field.bz / species.mass) * geo.gradient / field.bz;
    geo.ell_t = std::sqrt(species.hbar / (species.mass * geo.omega_t));
    geo.omega_l = species.mu_b * field.bz / species.hbar;
    geo.rho_sq = geo.omega_t / geo.omega_l;
    return geo;
}

std::pair<double, double> invert_harmonic_units(const TrapGeometry& geometry,
                                                const SpeciesConstants& species) {
    species.validate();
    if (geometry.omega_l <= 0.0 || geometry.omega_t <= 0.0)
        throw std::invalid_argument("geometry frequencies must be positive");
    const double bz = species.hbar * geometry.omega_l / species.mu_b;
    const double g = geometry.omega_t * std::sqrt(species.mass * bz / species.mu_b);
    return {g, bz};
}

}  // namespace chiptrap::trapfield
