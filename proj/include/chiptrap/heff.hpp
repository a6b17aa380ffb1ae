#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace chiptrap::heff {

using cplx = std::complex<double>;

// Dimensionless run parameters for one (rho, m) solve. The radial grid is
// half-integer, r_n = (n + 1/2) dr for n = 0..n_points, so r = 0 is never a
// grid point; a hard wall sits at (n_points + 3/2) dr.
struct SolverConfig {
    double rho_sq = 0.2;   // omega_T / omega_L
    int m = 0;             // angular quantum number
    double phi = 0.2;      // complex-rotation angle (rad)
    double dr = 0.05;      // grid step (harmonic lengths)
    int n_points = 600;    // N, highest grid index
    double h_reg = 1.0e-2; // regularization of the antitrapping channel
    bool shift_to_trap_bottom = true;  // report energies with the -1/rho^2 shift
    bool couple_channels = true;       // false zeroes the off-diagonal blocks

    double rho() const { return std::sqrt(rho_sq); }
    double r(int n) const { return (n + 0.5) * dr; }
    double wall_radius() const { return (n_points + 1.5) * dr; }
    int dim() const { return 3 * (n_points + 1); }

    void validate() const;

    // Same config with n_points chosen so the wall sits near `radius`.
    SolverConfig with_domain(double radius) const;
};

// One block h_{jk} of the effective Hamiltonian as coefficient functions of
// the (possibly complex-rotated) radius:
//   h = d2(r) d^2/dr^2 + d1(r) d/dr + mul(r).
struct ChannelOperator {
    std::string label;
    std::function<cplx(cplx)> d2;
    std::function<cplx(cplx)> d1;
    std::function<cplx(cplx)> mul;

    cplx eval_d2(cplx r) const { return d2 ? d2(r) : cplx(0.0); }
    cplx eval_d1(cplx r) const { return d1 ? d1(r) : cplx(0.0); }
    cplx eval_mul(cplx r) const { return mul ? mul(r) : cplx(0.0); }
};

// All nine blocks, unrotated, with d/dtheta already replaced by i*m.
// Index [row*3 + col] with row/col 0,1,2 for the +, 0, - channels.
std::array<ChannelOperator, 9> channel_operators(const SolverConfig& config);

// Complex rotation r -> e^{i phi} r, d/dr -> e^{-i phi} d/dr.
ChannelOperator rotate(const ChannelOperator& op, double phi);

// Analytic continuation of gamma = sqrt(1 + rho^2 r^2); throws if the
// argument lands on the branch cut (cannot happen for 0 <= phi < pi/2).
cplx gamma_c(double rho, cplx r);

// Discretization of r H_m psi = E r psi on the half-integer grid. A holds
// the row-weighted operator, b_diag the positive diagonal of B (entries
// r_n dr, one copy per channel). After assembly A is exactly symmetric in
// the sqrt(B) basis; `asymmetry` records the relative Frobenius asymmetry
// of the raw finite-difference matrix, which must be O(dr^2).
struct DiscreteProblem {
    Eigen::MatrixXcd A;
    Eigen::VectorXd b_diag;
    SolverConfig config;
    double asymmetry = 0.0;
};

DiscreteProblem assemble(const SolverConfig& config);

// Banded storage of the reduced matrix C = B^{-1/2} A B^{-1/2} (bandwidth
// kl = ku = 5 in the grid-major ordering). Used by the targeted solver.
struct BandedProblem {
    int n = 0;
    int kl = 5;
    int ku = 5;
    std::vector<cplx> band;  // (kl+ku+1) x n, column-major, row kl+ku index offset
    Eigen::VectorXd b_diag;
    SolverConfig config;
    double asymmetry = 0.0;

    cplx at(int i, int j) const {
        if (i - j > kl || j - i > ku) return cplx(0.0);
        return band[static_cast<size_t>(j) * (kl + ku + 1) + (ku + i - j)];
    }
    cplx& at_ref(int i, int j) {
        return band[static_cast<size_t>(j) * (kl + ku + 1) + (ku + i - j)];
    }
    Eigen::VectorXcd multiply(const Eigen::VectorXcd& x) const;
};

BandedProblem assemble_banded(const SolverConfig& config);

// A * x; dimension-checked.
Eigen::VectorXcd apply(const DiscreteProblem& problem, const Eigen::VectorXcd& x);

// Sparse triplet dump "row col re im" (0-based) of the nonzeros of A.
void dump_triplets(const DiscreteProblem& problem, std::ostream& os);

}  // namespace chiptrap::heff
