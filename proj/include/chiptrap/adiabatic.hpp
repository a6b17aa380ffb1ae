#pragma once

#include <Eigen/Dense>
#include <complex>

namespace chiptrap::adiabatic {

// Local spin-1 eigenvectors in the Zeeman basis {|1>, |0>, |-1>}, with the
// canonical phases e^{i beta}, e^{2i beta} on the |0>, |-1> components.
// Eigenvalues are +V, 0, -V for chi_plus, chi_zero, chi_minus.
struct SpinEigensystem {
    Eigen::Vector3cd chi_plus;
    Eigen::Vector3cd chi_zero;
    Eigen::Vector3cd chi_minus;

    const Eigen::Vector3cd& channel(int j) const {
        return j > 0 ? chi_plus : (j == 0 ? chi_zero : chi_minus);
    }
};

// Azimuthal vector-potential coefficients (of e_theta/r, measured along
// increasing beta), optional radial components (zero in the canonical
// gauge), and the Born-Huang scalars.
struct GaugeFields {
    double a_plus = 0.0;
    double a_zero = 0.0;
    double a_minus = 0.0;
    double ar_plus = 0.0;
    double ar_zero = 0.0;
    double ar_minus = 0.0;
    double phi_plus = 0.0;
    double phi_zero = 0.0;
    double phi_minus = 0.0;
    double gamma = 1.0;
};

// Spin part of the Hamiltonian for field direction (alpha, beta) and Zeeman
// scale V; Hermitian, traceless, eigenvalues {+V, 0, -V}.
Eigen::Matrix3cd spin_matrix(double alpha, double beta, double v);

SpinEigensystem spin_eigensystem(double alpha, double beta);

// gamma(r) = sqrt(1 + rho^2 r^2)
double gamma_of(double rho, double r);

// Closed-form gauge structure at radius r; throws for r <= 0 (A_0 carries a
// 1/r singularity; use the small-r Taylor forms instead of the limit).
GaugeFields gauge_fields(double rho, double r);

// A_j -> A_j + grad f for a scalar f(r, beta); Phi_j unchanged. The gradient
// is supplied at the evaluation point as (df/dr, df/dbeta).
GaugeFields gauge_transform(const GaugeFields& fields, double df_dr, double df_dbeta);

// The two corrections the gauge structure adds to the bare radial operator
// of the trapped channel at angular quantum number m:
//   -(m/r^2) (1 - 1/gamma) + (1/(4 r^2)) (3g^4 - 4g^3 + 2g^2 - 1)/g^4.
// The second term is (1/2) A_+^2 + Phi_+ in closed form; it tends to
// rho^2/2 - (5/8) rho^4 r^2 for small rho*r and to (3/4)/r^2 for large rho*r.
double perturbative_hpp(double rho, int m, double r);

// Golden-rule order-of-magnitude estimate exp(-2 E_n - 2/rho^2) for the
// decay rate of a trapped state at (shifted) energy E_n.
double fgr_decay_estimate(double e_n, double rho);

}  // namespace chiptrap::adiabatic
