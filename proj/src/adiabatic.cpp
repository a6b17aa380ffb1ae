#include "chiptrap/adiabatic.hpp"

#include <cmath>
#include <stdexcept>

namespace chiptrap::adiabatic {

using cplx = std::complex<double>;

Eigen::Matrix3cd spin_matrix(double alpha, double beta, double v) {
    if (v < 0.0) throw std::invalid_argument("Zeeman scale V must be non-negative");
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    const cplx ep = std::polar(1.0, beta);
    const cplx em = std::conj(ep);
    const double w = v / std::sqrt(2.0);
    Eigen::Matrix3cd h;
    h << v * c, w * s * em, 0.0,
         w * s * ep, 0.0, w * s * em,
         0.0, w * s * ep, -v * c;
    return h;
}

SpinEigensystem spin_eigensystem(double alpha, double beta) {
    const double ch = std::cos(alpha / 2.0);
    const double sh = std::sin(alpha / 2.0);
    const double s = std::sin(alpha);
    const cplx e1 = std::polar(1.0, beta);
    const cplx e2 = std::polar(1.0, 2.0 * beta);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    SpinEigensystem sys;
    sys.chi_plus << ch * ch, inv_sqrt2 * s * e1, sh * sh * e2;
    sys.chi_zero << -inv_sqrt2 * s, std::cos(alpha) * e1, inv_sqrt2 * s * e2;
    sys.chi_minus << sh * sh, -inv_sqrt2 * s * e1, ch * ch * e2;
    return sys;
}

double gamma_of(double rho, double r) {
    return std::sqrt(1.0 + rho * rho * r * r);
}

GaugeFields gauge_fields(double rho, double r) {
    if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
    if (r <= 0.0) throw std::invalid_argument("gauge fields require r > 0");
    const double g = gamma_of(rho, r);
    const double g2 = g * g;
    const double g4 = g2 * g2;

    GaugeFields f;
    f.gamma = g;
    f.a_plus = 1.0 - 1.0 / g;
    f.a_zero = 1.0;
    f.a_minus = 1.0 + 1.0 / g;
    f.phi_plus = rho * rho * (1.0 + g2) / (4.0 * g4);
    f.phi_minus = f.phi_plus;
    // The middle eigenvector turns twice as fast as the stretched ones.
    f.phi_zero = 2.0 * f.phi_plus;
    return f;
}

GaugeFields gauge_transform(const GaugeFields& fields, double df_dr, double df_dbeta) {
    GaugeFields out = fields;
    out.a_plus += df_dbeta;
    out.a_zero += df_dbeta;
    out.a_minus += df_dbeta;
    out.ar_plus += df_dr;
    out.ar_zero += df_dr;
    out.ar_minus += df_dr;
    return out;
}

double perturbative_hpp(double rho, int m, double r) {
    if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
    if (r <= 0.0) throw std::invalid_argument("r must be positive");
    const double g = gamma_of(rho, r);
    const double g2 = g * g;
    const double g3 = g2 * g;
    const double g4 = g2 * g2;
    const double r2 = r * r;
    const double gauge_term = -(m / r2) * (1.0 - 1.0 / g);
    const double scalar_term = (3.0 * g4 - 4.0 * g3 + 2.0 * g2 - 1.0) / (4.0 * r2 * g4);
    return gauge_term + scalar_term;
}

double fgr_decay_estimate(double e_n, double rho) {
    if (rho <= 0.0) throw std::invalid_argument("rho must be positive");
    const double k_sq = 2.0 * e_n + 2.0 / (rho * rho);
    if (k_sq <= 0.0) throw std::invalid_argument("state below the decay threshold");
    return std::exp(-k_sq);
}

}  // namespace chiptrap::adiabatic
