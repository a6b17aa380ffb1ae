#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "chiptrap/eigsolve.hpp"
#include "chiptrap/heff.hpp"

namespace chiptrap::resonance {

using cplx = std::complex<double>;

// One phi-stable state: energy relative to the configured zero, width
// Gamma = -2 Im E, rank label by energy, and the cross-angle match distance.
struct Resonance {
    double energy = 0.0;
    double gamma = 0.0;
    int m = 0;
    int label = 0;
    double stability = 0.0;
    bool below_floor = false;  // width under the numerical floor (reported as 0)
    bool ambiguous = false;    // more than one cross-angle match candidate
    std::array<double, 3> channel_weights{0.0, 0.0, 0.0};
    double residual = std::numeric_limits<double>::quiet_NaN();

    cplx eigenvalue() const { return {energy, -0.5 * gamma}; }
};

struct ContinuumRay {
    cplx branch_point;
    double angle_expected = 0.0;               // -2 phi
    std::optional<double> angle_fitted;        // least-squares fit, psi_0 ray only
    int member_count = 0;
};

struct Classification {
    std::vector<Resonance> resonances;  // stable states incl. zero-width ones
    std::vector<cplx> bound;            // stable eigenvalues on the real axis
    std::vector<cplx> continuum;        // everything assigned to rotated continua
    std::vector<cplx> rejected;         // stable but unphysical (Im E > eps_real)
    ContinuumRay ray_zero;              // psi_0 continuum
    ContinuumRay ray_minus;             // regularized psi_- continuum
};

struct ClassifyOptions {
    double eps_match_rel = 1.0e-4;  // match tolerance, scaled by max(1, |E|)
    double eps_real = 1.0e-8;       // real-axis band for bound states
    double gamma_floor = 1.0e-12;   // widths below this report as zero
    double ray_tol_rel = 1.0e-3;    // signed distance veto band around the rays
    bool compute_weights = true;    // channel weights via banded inverse iteration
};

// Pair the spectra of two rotation angles, separate phi-stable states from
// the rotated continua, and extract resonance parameters. Both spectra must
// carry configs identical except for phi.
Classification classify(const eigsolve::Spectrum& spec1, const eigsolve::Spectrum& spec2,
                        const ClassifyOptions& options = {});

// Energy splitting E(m=-1) - E(m=+1) between states of equal label.
double splitting(const Resonance& res_plus, const Resonance& res_minus);

// Solve one (rho_sq, m) point at config.phi and at phi2 and classify.
Classification solve_point(const heff::SolverConfig& config, double phi2,
                           const ClassifyOptions& options = {});

struct ScanPoint {
    double rho_sq = 0.0;
    int m = 0;
    std::vector<Resonance> resonances;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

// classify once per (rho_sq, m); failures are recorded per point and the
// scan continues. Points are independent work items; `workers` > 1 runs
// them on a thread pool with deterministic result ordering.
std::vector<ScanPoint> scan(const std::vector<double>& rho_sq_list,
                            const std::vector<int>& m_list,
                            const heff::SolverConfig& base_config, double phi2,
                            const ClassifyOptions& options = {}, int workers = 1);

struct Table1Row {
    double rho_sq;
    double gamma_ref;      // reference decay rate of the m=0 ground state
    double splitting_ref;  // reference E(-1) - E(+1) of the lowest pair
    double gamma_num = std::numeric_limits<double>::quiet_NaN();
    double splitting_num = std::numeric_limits<double>::quiet_NaN();
};

// Reference values for the four benchmark ratios omega_T/omega_L.
std::vector<Table1Row> table1_reference();

// Run the benchmark at the given numerical parameters (rho_sq and m are
// overridden per row).
std::vector<Table1Row> run_table1(const heff::SolverConfig& base_config, double phi2,
                                  const ClassifyOptions& options = {}, int workers = 1);

}  // namespace chiptrap::resonance
