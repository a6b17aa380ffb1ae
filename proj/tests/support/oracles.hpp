#pragma once

// Test-side oracles, independent of the library implementation paths they
// check. Shared between the unit suites and the acceptance runner.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "chiptrap/adiabatic.hpp"

namespace chiptrap::oracles {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Finite-difference gauge oracle: connection and Born-Huang scalar straight
// from differentiated eigenvectors. `chi` maps (r, beta) to a spinor; the
// azimuthal derivative is taken along increasing beta.
// ---------------------------------------------------------------------------

struct GaugeSample {
    double a_theta = 0.0;   // azimuthal coefficient of e_theta/r
    double a_r = 0.0;       // radial component
    double phi = 0.0;       // Born-Huang scalar
};

inline GaugeSample gauge_oracle(const std::function<Eigen::Vector3cd(double, double)>& chi,
                                double r, double beta, double step = 1.0e-5) {
    const Eigen::Vector3cd c0 = chi(r, beta);
    const Eigen::Vector3cd dr =
        (chi(r + step, beta) - chi(r - step, beta)) / (2.0 * step);
    const Eigen::Vector3cd db =
        (chi(r, beta + step) - chi(r, beta - step)) / (2.0 * step);

    GaugeSample s;
    s.a_theta = (-cplx(0, 1) * c0.dot(db)).real();
    s.a_r = (-cplx(0, 1) * c0.dot(dr)).real();
    const cplx pr = c0.dot(dr);
    const cplx pb = c0.dot(db);
    const double proj_r = dr.squaredNorm() - std::norm(pr);
    const double proj_b = db.squaredNorm() - std::norm(pb);
    s.phi = 0.5 * (proj_r + proj_b / (r * r));
    return s;
}

// Eigenvector of channel j at radius r (alpha from tan(alpha) = rho r), with
// an optional extra phase f(r, beta).
inline std::function<Eigen::Vector3cd(double, double)> channel_state(
    double rho, int j, const std::function<double(double, double)>& phase = {}) {
    return [rho, j, phase](double r, double beta) {
        const double alpha = std::atan(rho * r);
        Eigen::Vector3cd v = adiabatic::spin_eigensystem(alpha, beta).channel(j);
        if (phase) v *= std::polar(1.0, phase(r, beta));
        return v;
    };
}

// ---------------------------------------------------------------------------
// Durand-Kerner root finder for the characteristic polynomial det(A - E B),
// used as the generalized-eigenvalue oracle on small matrices.
// ---------------------------------------------------------------------------

inline std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs) {
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    const int degree = static_cast<int>(coeffs.size()) - 1;
    std::vector<cplx> roots(degree);
    for (int i = 0; i < degree; ++i) roots[i] = std::polar(0.7, 1.9 * i + 0.4);
    auto eval = [&](cplx z) {
        cplx p = coeffs.back();
        for (int k = degree - 1; k >= 0; --k) p = p * z + coeffs[k];
        return p;
    };
    for (int sweep = 0; sweep < 400; ++sweep) {
        double moved = 0.0;
        for (int i = 0; i < degree; ++i) {
            cplx denom = coeffs.back();
            for (int k = 0; k < degree; ++k)
                if (k != i) denom *= roots[i] - roots[k];
            const cplx delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1.0e-14) break;
    }
    return roots;
}

// Characteristic-polynomial coefficients of det(A - E B) via interpolation
// at n+1 sample points (Newton form evaluated back to monomials).
inline std::vector<cplx> pencil_char_poly(const Eigen::MatrixXcd& a,
                                          const Eigen::MatrixXcd& b) {
    const int n = static_cast<int>(a.rows());
    const int npts = n + 1;
    std::vector<cplx> xs(npts), ys(npts);
    for (int k = 0; k < npts; ++k) {
        xs[k] = 2.5 * std::polar(1.0, 2.0 * M_PI * k / npts + 0.3);
        ys[k] = (a - xs[k] * b).determinant();
    }
    // Newton divided differences, then expand.
    std::vector<cplx> dd = ys;
    for (int level = 1; level < npts; ++level)
        for (int k = npts - 1; k >= level; --k)
            dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
    std::vector<cplx> coeffs{dd[npts - 1]};
    for (int k = npts - 2; k >= 0; --k) {
        coeffs.insert(coeffs.begin(), cplx(0.0));
        for (size_t i = 0; i + 1 < coeffs.size(); ++i) coeffs[i] -= xs[k] * coeffs[i + 1];
        coeffs[0] += dd[k];
    }
    return coeffs;
}

inline std::vector<cplx> generalized_eigen_oracle(const Eigen::MatrixXcd& a,
                                                  const Eigen::MatrixXcd& b) {
    return polynomial_roots(pencil_char_poly(a, b));
}

// ---------------------------------------------------------------------------
// Power iteration with Hotelling deflation for complex-symmetric matrices;
// independent check of the dominant eigenvalues of the dense solver.
// ---------------------------------------------------------------------------

inline std::vector<cplx> dominant_eigen_oracle(Eigen::MatrixXcd c, int count,
                                               unsigned seed = 7u, int iterations = 6000) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<cplx> found;
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXcd x(c.rows());
        for (int i = 0; i < x.size(); ++i) x[i] = cplx(dist(rng), dist(rng));
        x /= x.norm();
        cplx lambda(0.0);
        for (int it = 0; it < iterations; ++it) {
            Eigen::VectorXcd y = c * x;
            const double norm = y.norm();
            if (norm == 0.0) break;
            x = y / norm;
            if (it % 16 == 15 || it + 1 == iterations) {
                // complex-symmetric Rayleigh quotient (unconjugated product)
                const cplx xtx = (x.transpose() * x)(0);
                lambda = (x.transpose() * (c * x))(0) / xtx;
            }
        }
        found.push_back(lambda);
        const cplx xtx = (x.transpose() * x)(0);
        c -= (lambda / xtx) * (x * x.transpose());
    }
    return found;
}

}  // namespace chiptrap::oracles
