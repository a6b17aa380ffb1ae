#include <doctest.h>

#include <cmath>

#include "chiptrap/trapfield.hpp"

using namespace chiptrap;
using trapfield::WireBiasField;

namespace {

// Zooming grid search on |B| over a box around (xc, yc).
std::pair<double, double> grid_search_minimum(const WireBiasField& field, double xc,
                                              double yc, double half_width) {
    double bx = xc, by = yc, bw = half_width;
    for (int round = 0; round < 6; ++round) {
        double best = std::numeric_limits<double>::infinity();
        double nx = bx, ny = by;
        const int steps = 40;
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j) {
                const double x = bx - bw + 2.0 * bw * i / steps;
                const double y = by - bw + 2.0 * bw * j / steps;
                const double mag = trapfield::total_field(field, x, y).norm();
                if (mag < best) {
                    best = mag;
                    nx = x;
                    ny = y;
                }
            }
        bx = nx;
        by = ny;
        bw /= 10.0;
    }
    return {bx, by};
}

double field_magnitude_sq(const WireBiasField& field, double x, double y) {
    return trapfield::total_field(field, x, y).squaredNorm();
}

}  // namespace

TEST_SUITE("trapfield") {

TEST_CASE("total field vanishes in the plane at the analytic minimum") {
    WireBiasField field{2.0, 5.0e-4, 2.0e-5};
    const auto [x0, y0] = trapfield::trap_minimum(field);
    const Eigen::Vector3d b = trapfield::total_field(field, x0, y0);
    CHECK(std::abs(b.x()) < 1.0e-18);
    CHECK(std::abs(b.y()) < 1.0e-18);
    CHECK(b.norm() == doctest::Approx(field.bz).epsilon(1.0e-14));
}

TEST_CASE("xi and the minimum position for the reference parameters") {
    WireBiasField field{1.0, 1.0e-3, 5.0e-6};
    CHECK(field.xi() == doctest::Approx(2.0e-7).epsilon(1.0e-12));
    const auto [x0, y0] = trapfield::trap_minimum(field);
    CHECK(x0 == doctest::Approx(2.0e-7 / (std::sqrt(2.0) * 1.0e-3)).epsilon(1.0e-12));
    CHECK(x0 == y0);
    const Eigen::Vector3d b = trapfield::total_field(field, x0, y0);
    CHECK(std::abs(b.x()) < 1.0e-15);
    CHECK(std::abs(b.y()) < 1.0e-15);
}

TEST_CASE("total field throws on the wire") {
    WireBiasField field{1.0, 1.0e-3, 5.0e-6};
    CHECK_THROWS_AS(trapfield::total_field(field, 0.0, 0.0), std::domain_error);
}

TEST_CASE("|B|^2 is harmonic with curvature G^2 around the minimum") {
    WireBiasField field{1.5, 8.0e-4, 3.0e-5};
    const auto [x0, y0] = trapfield::trap_minimum(field);
    const double g = trapfield::gradient(field);
    const double h = 1.0e-5 * x0;
    // central second difference of |B|^2 along x at the minimum
    const double d2 = (field_magnitude_sq(field, x0 + h, y0) -
                       2.0 * field_magnitude_sq(field, x0, y0) +
                       field_magnitude_sq(field, x0 - h, y0)) /
                      (h * h);
    CHECK(0.5 * d2 == doctest::Approx(g * g).epsilon(1.0e-4));
    // |B|^2 - (B_z^2 + G^2 dx^2) vanishes faster than dx^2
    const double dx = 1.0e-3 * x0;
    const double excess = field_magnitude_sq(field, x0 + dx, y0) -
                          (field.bz * field.bz + g * g * dx * dx);
    CHECK(std::abs(excess) < 1.0e-2 * g * g * dx * dx);
}

TEST_CASE("minimum scales as 1/B0 and matches a grid search") {
    WireBiasField field{1.0, 1.0e-3, 5.0e-6};
    WireBiasField doubled = field;
    doubled.b0 *= 2.0;
    CHECK(trapfield::trap_minimum(doubled).first ==
          doctest::Approx(0.5 * trapfield::trap_minimum(field).first));

    const auto [x0, y0] = trapfield::trap_minimum(field);
    const auto [gx, gy] = grid_search_minimum(field, 1.2 * x0, 0.8 * y0, 0.5 * x0);
    CHECK(std::abs(gx - x0) / x0 < 1.0e-6);
    CHECK(std::abs(gy - y0) / y0 < 1.0e-6);
}

TEST_CASE("no wire current means no minimum") {
    WireBiasField field{0.0, 1.0e-3, 5.0e-6};
    CHECK_THROWS(trapfield::trap_minimum(field));
}

TEST_CASE("gradient invariances and finite-difference check") {
    WireBiasField field{1.0, 1.0e-3, 5.0e-6};
    WireBiasField scaled{4.0, 2.0e-3, 5.0e-6};  // B0 -> 2 B0, I -> 4 I
    CHECK(trapfield::gradient(scaled) == doctest::Approx(trapfield::gradient(field)));

    const auto [x0, y0] = trapfield::trap_minimum(field);
    const double h = 1.0e-6 * x0;
    const double dbx_dx = (trapfield::total_field(field, x0 + h, y0).x() -
                           trapfield::total_field(field, x0 - h, y0).x()) /
                          (2.0 * h);
    CHECK(dbx_dx == doctest::Approx(trapfield::gradient(field)).epsilon(1.0e-4));
}

TEST_CASE("linearized field matches the full field to second order") {
    WireBiasField field{1.0, 1.0e-3, 5.0e-6};
    const auto [x0, y0] = trapfield::trap_minimum(field);
    const double g = trapfield::gradient(field);
    double previous = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double d = (k == 0 ? 1.0e-3 : 5.0e-4) * x0;
        const Eigen::Vector3d full = trapfield::total_field(field, x0 + d, y0 - d);
        const Eigen::Vector3d lin = trapfield::linearized_field(field, d, -d);
        CHECK(lin.x() == doctest::Approx(g * d));
        CHECK(lin.y() == doctest::Approx(g * d));
        const double err = (full - lin).norm();
        if (k == 0)
            previous = err;
        else
            CHECK(err < 0.3 * previous);  // second order: 4x drop expected
    }
}

TEST_CASE("hessian of |B| is positive semidefinite in the plane") {
    WireBiasField field{1.0, 1.2e-3, 4.0e-5};
    const auto [x0, y0] = trapfield::trap_minimum(field);
    const double h = 1.0e-4 * x0;
    auto mag = [&](double x, double y) { return trapfield::total_field(field, x, y).norm(); };
    const double fxx = (mag(x0 + h, y0) - 2 * mag(x0, y0) + mag(x0 - h, y0)) / (h * h);
    const double fyy = (mag(x0, y0 + h) - 2 * mag(x0, y0) + mag(x0, y0 - h)) / (h * h);
    const double fxy = (mag(x0 + h, y0 + h) - mag(x0 + h, y0 - h) - mag(x0 - h, y0 + h) +
                        mag(x0 - h, y0 - h)) /
                       (4.0 * h * h);
    Eigen::Matrix2d hess;
    hess << fxx, fxy, fxy, fyy;
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(hess).eigenvalues();
    CHECK(ev.minCoeff() > -1.0e-6 * std::abs(ev.maxCoeff()));
}

TEST_CASE("field angles reproduce beta = -theta on the linearized field") {
    WireBiasField field{1.0, 1.0e-3, 5.0e-6};
    const double g = trapfield::gradient(field);
    for (double theta : {-2.8, -1.1, 0.0, 0.4, 1.9, 3.0}) {
        const double r = 3.0e-6;
        const Eigen::Vector3d b =
            trapfield::linearized_field(field, r * std::cos(theta), r * std::sin(theta));
        const auto angles = trapfield::field_angles(b);
        double expected = -theta;
        if (expected <= -M_PI) expected += 2.0 * M_PI;  // branch cut on negative x axis
        CHECK(angles.beta == doctest::Approx(expected).epsilon(1.0e-12));
        CHECK(std::tan(angles.alpha) == doctest::Approx(g * r / field.bz).epsilon(1.0e-12));
    }
}

TEST_CASE("dimensionless potential limits") {
    CHECK(trapfield::dimensionless_potential(0.5, 0.0) == doctest::Approx(4.0));
    // harmonic expansion bound |V - (1/rho^2 + r^2/2)| <= rho^2 r^4 / 8
    for (double rho : {0.05, 0.2, 0.5}) {
        for (double r : {0.1, 0.5, 0.5 / rho}) {
            if (rho * r > 0.5) continue;
            const double v = trapfield::dimensionless_potential(rho, r);
            const double harmonic = 1.0 / (rho * rho) + 0.5 * r * r;
            CHECK(std::abs(v - harmonic) <= rho * rho * std::pow(r, 4) / 8.0 + 1.0e-14);
        }
    }
    // linear tail V -> r / rho
    const double v_far = trapfield::dimensionless_potential(0.3, 1.0e5);
    CHECK(v_far == doctest::Approx(1.0e5 / 0.3).epsilon(1.0e-6));
    CHECK_THROWS_AS(trapfield::dimensionless_potential(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("regularized potential saturates at 1/(h rho)") {
    const double rho = std::sqrt(0.2);
    CHECK(trapfield::regularized_potential(rho, 1.0e-2, 0.0) ==
          doctest::Approx(1.0 / (rho * rho)));
    const double v = trapfield::dimensionless_potential(rho, 1.0);
    const double vs = trapfield::regularized_potential(rho, 1.0e-2, 1.0);
    CHECK(std::abs(vs - v) / v < 1.0e-4);
    const double r_far = 1.0e3 / 1.0e-2;
    CHECK(trapfield::regularized_potential(rho, 1.0e-2, r_far) ==
          doctest::Approx(1.0 / (1.0e-2 * rho)).epsilon(1.0e-3));
    // pointwise convergence to V as h -> 0
    double previous = std::numeric_limits<double>::infinity();
    for (double h : {1.0e-2, 5.0e-3, 2.5e-3}) {
        const double gap = std::abs(trapfield::regularized_potential(rho, h, 2.0) -
                                    trapfield::dimensionless_potential(rho, 2.0));
        CHECK(gap < previous);
        previous = gap;
    }
}

TEST_CASE("harmonic units: definitions, paper coefficients, round trip") {
    const auto species = trapfield::SpeciesConstants::rb87();
    WireBiasField field{1.0, 1.0e-3, 5.0e-6};  // B_z = 0.05 G
    const auto geo = trapfield::harmonic_units(field, species);

    CHECK(geo.rho_sq * geo.omega_l == doctest::Approx(geo.omega_t).epsilon(1.0e-14));
    CHECK(geo.ell_t == doctest::Approx(std::sqrt(species.hbar / (species.mass * geo.omega_t))));

    // Collapsed coefficients with B_z in Gauss: recomputed constants land
    // within 2% of the tabulated 813.5 / 129.47 / 9.25e-5.
    const double bz_gauss = field.bz / constants::tesla_per_gauss;
    const double omega_coef = geo.omega_t * std::sqrt(bz_gauss) / geo.gradient;
    const double ratio_coef = geo.rho_sq * std::pow(bz_gauss, 1.5) / geo.gradient;
    CHECK(omega_coef == doctest::Approx(813.5).epsilon(0.02));
    CHECK(omega_coef / (2.0 * constants::pi) == doctest::Approx(129.47).epsilon(0.02));
    CHECK(ratio_coef == doctest::Approx(9.25e-5).epsilon(0.02));

    const auto [g, bz] = trapfield::invert_harmonic_units(geo, species);
    CHECK(g == doctest::Approx(geo.gradient).epsilon(1.0e-10));
    CHECK(bz == doctest::Approx(field.bz).epsilon(1.0e-10));
}

}  // TEST_SUITE
