#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "chiptrap/heff.hpp"

namespace chiptrap::eigsolve {

using cplx = std::complex<double>;

struct Spectrum {
    Eigen::VectorXcd eigenvalues;
    Eigen::VectorXd residuals;  // NaN where not computed
    std::optional<heff::SolverConfig> config;
};

// C = B^{-1/2} A B^{-1/2}; eigenvalues of C are the generalized eigenvalues
// of (A, B). Throws on a non-positive B entry.
Eigen::MatrixXcd reduce(const heff::DiscreteProblem& problem);

// Full spectrum of a general complex matrix (LAPACK zgeev). Deterministic
// for identical input. Throws on non-convergence, reporting how many
// eigenvalues failed, and rejects dimensions above `dim_cap`.
Spectrum eig_dense(const Eigen::MatrixXcd& c, int dim_cap = 4000);

// reduce + eig_dense with the config echoed into the spectrum.
Spectrum solve(const heff::DiscreteProblem& problem);

struct EigenvectorResult {
    Eigen::VectorXcd vector;   // eigenvector of C, unit norm
    double residual = 0.0;     // ||C x - E x|| / ||x||
    int iterations = 0;
    bool converged = false;
    bool ambiguous = false;    // clustered/defective eigenvalue suspected
};

struct EigenvectorOptions {
    double tol = 1.0e-8;
    int max_iterations = 30;
    unsigned seed = 12345;
    // When supplied, a second eigenvalue within the match tolerance of E
    // flags the result as ambiguous.
    std::vector<cplx> known_eigenvalues;
};

// Inverse iteration from a seeded random start.
EigenvectorResult eigenvector(const Eigen::MatrixXcd& c, cplx e,
                              const EigenvectorOptions& options = {});

// Undo the B^{1/2} scaling: channel wave functions psi = B^{-1/2} u.
Eigen::VectorXcd to_psi(const Eigen::VectorXcd& u, const Eigen::VectorXd& b_diag);

// Fraction of the B-weighted norm carried by the +, 0, - channels, computed
// on a vector in the reduced (sqrt(B)-scaled) basis with grid-major layout.
std::array<double, 3> channel_weights(const Eigen::VectorXcd& u);

struct TargetedEigenpair {
    cplx eigenvalue;
    Eigen::VectorXcd vector;
    double residual = 0.0;
};

// Shift-invert Arnoldi around sigma on the banded reduced matrix; returns
// converged Ritz pairs ordered by distance from sigma. Much cheaper than the
// dense solve when only a known neighbourhood of the spectrum is wanted.
std::vector<TargetedEigenpair> shift_invert_eigs(const heff::BandedProblem& problem,
                                                 cplx sigma, int krylov_dim = 60,
                                                 double tol = 1.0e-8,
                                                 unsigned seed = 12345);

// Banded inverse iteration for one eigenvector of the reduced matrix.
EigenvectorResult banded_eigenvector(const heff::BandedProblem& problem, cplx e,
                                     const EigenvectorOptions& options = {});

}  // namespace chiptrap::eigsolve
