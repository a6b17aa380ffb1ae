#include "chiptrap/heff.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "chiptrap/constants.hpp"

namespace chiptrap::heff {

namespace {

constexpr double kPi = constants::pi;

// Relative asymmetry allowed for the raw finite-difference matrix in the
// sqrt(B) basis. Second-order stencils leave O(dr^2); the prefactor is a
// generous envelope over the rho <= 1 range used here.
double asymmetry_tolerance(const SolverConfig& cfg) {
    return std::max(1.0e-11, 50.0 * cfg.dr * cfg.dr);
}

}  // namespace

void SolverConfig::validate() const {
    if (rho_sq <= 0.0) throw std::invalid_argument("rho_sq must be positive");
    if (phi < 0.0 || phi >= kPi / 4.0)
        throw std::invalid_argument("rotation angle must lie in [0, pi/4)");
    if (dr <= 0.0) throw std::invalid_argument("grid step dr must be positive");
    if (n_points < 50) throw std::invalid_argument("need at least 50 radial points");
    if (h_reg <= 0.0) throw std::invalid_argument("h_reg must be positive");
}

SolverConfig SolverConfig::with_domain(double radius) const {
    if (radius <= 0.0) throw std::invalid_argument("domain radius must be positive");
    SolverConfig out = *this;
    out.n_points = std::max(50, static_cast<int>(std::lround(radius / dr)));
    return out;
}

cplx gamma_c(double rho, cplx r) {
    const cplx w = 1.0 + rho * rho * r * r;
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw std::domain_error("gamma branch cut crossed; rotation angle out of range");
    return std::sqrt(w);
}

namespace {

cplx vscatt_c(double rho, double h, cplx r) {
    const cplx r2 = r * r;
    const cplx w = 1.0 + rho * rho * r2 / (1.0 + h * h * r2);
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw std::domain_error("regularized potential branch cut crossed");
    return std::sqrt(w) / (rho * rho);
}

}  // namespace

std::array<ChannelOperator, 9> channel_operators(const SolverConfig& config) {
    config.validate();
    const double rho = config.rho();
    const double m = config.m;
    const double h = config.h_reg;
    const double shift = config.shift_to_trap_bottom ? 1.0 / config.rho_sq : 0.0;
    const double sqrt2 = std::sqrt(2.0);

    // Diagonal blocks: -(1/2) u'' - u'/(2r) + (m - a_j)^2/(2 r^2) + Phi_j + U_j.
    auto diagonal = [=](double a_sign, double phi_factor, int channel) {
        ChannelOperator op;
        op.label = channel > 0 ? "++" : (channel == 0 ? "00" : "--");
        op.d2 = [](cplx) { return cplx(-0.5); };
        op.d1 = [](cplx r) { return -0.5 / r; };
        op.mul = [=](cplx r) -> cplx {
            const cplx g = gamma_c(rho, r);
            const cplx g2 = g * g;
            const cplx a = channel == 0 ? cplx(1.0) : 1.0 + a_sign / g;
            const cplx phi_bh = phi_factor * rho * rho * (1.0 + g2) / (4.0 * g2 * g2);
            const cplx mm = m - a;
            cplx u(0.0);
            if (channel > 0) u = g / (rho * rho);
            if (channel < 0) u = -vscatt_c(rho, h, r);
            return mm * mm / (2.0 * r * r) + phi_bh + u - shift;
        };
        return op;
    };

    // First-derivative couplings share the structure
    //   s * sqrt(2) rho/(2 gamma^2) d/dr - sqrt(2) rho m/(2 r gamma)
    //     + sqrt(2) rho (gamma^3 + c2 gamma^2 + c0)/(2 r gamma^4).
    auto coupling = [=](const char* label, double s, double c2, double c0) {
        ChannelOperator op;
        op.label = label;
        op.d1 = [=](cplx r) {
            const cplx g = gamma_c(rho, r);
            return s * sqrt2 * rho / (2.0 * g * g);
        };
        op.mul = [=](cplx r) -> cplx {
            const cplx g = gamma_c(rho, r);
            const cplx g2 = g * g;
            const cplx g4 = g2 * g2;
            const cplx poly = g2 * g + c2 * g2 + c0;
            return -sqrt2 * rho * m / (2.0 * r * g) + sqrt2 * rho * poly / (2.0 * r * g4);
        };
        return op;
    };

    auto quadratic = [=](const char* label) {
        ChannelOperator op;
        op.label = label;
        op.mul = [=](cplx r) {
            const cplx g = gamma_c(rho, r);
            const cplx g4 = g * g * g * g;
            return r * r * rho * rho * rho * rho / (4.0 * g4);
        };
        return op;
    };

    std::array<ChannelOperator, 9> ops;
    ops[0] = diagonal(-1.0, 1.0, +1);            // ++
    ops[4] = diagonal(0.0, 2.0, 0);              // 00
    ops[8] = diagonal(+1.0, 1.0, -1);            // --
    ops[1] = coupling("+0", +1.0, -1.0, +1.0);   // gamma^3 - gamma^2 + 1
    ops[3] = coupling("0+", -1.0, 0.0, -1.0);    // gamma^3 - 1
    ops[5] = coupling("0-", +1.0, 0.0, +1.0);    // gamma^3 + 1
    ops[7] = coupling("-0", -1.0, +1.0, -1.0);   // gamma^3 + gamma^2 - 1
    ops[2] = quadratic("+-");
    ops[6] = quadratic("-+");

    if (!config.couple_channels) {
        for (int idx : {1, 2, 3, 5, 6, 7}) {
            ops[idx].d1 = nullptr;
            ops[idx].mul = nullptr;
        }
    }
    return ops;
}

ChannelOperator rotate(const ChannelOperator& op, double phi) {
    if (phi < 0.0 || phi >= kPi / 4.0)
        throw std::invalid_argument("rotation angle must lie in [0, pi/4)");
    if (phi == 0.0) return op;
    const cplx scale = std::polar(1.0, phi);
    const cplx d1_factor = std::polar(1.0, -phi);
    const cplx d2_factor = std::polar(1.0, -2.0 * phi);
    ChannelOperator out;
    out.label = op.label;
    if (op.d2) out.d2 = [=, f = op.d2](cplx r) { return d2_factor * f(scale * r); };
    if (op.d1) out.d1 = [=, f = op.d1](cplx r) { return d1_factor * f(scale * r); };
    if (op.mul) out.mul = [=, f = op.mul](cplx r) { return f(scale * r); };
    return out;
}

namespace {

// Scatter the row-weighted finite-difference entries of all nine rotated
// blocks. Ordering is grid-major: index(n, channel) = 3 n + channel.
// Ghost values at r_{-1} and r_{N+1} are taken as zero; for the diagonal
// kinetic part the r_{-1} coefficient cancels identically at n = 0.
template <typename Emit>
void assemble_raw(const SolverConfig& cfg, Emit&& emit) {
    const auto base = channel_operators(cfg);
    std::array<ChannelOperator, 9> ops;
    for (int i = 0; i < 9; ++i) ops[i] = rotate(base[i], cfg.phi);

    const int npts = cfg.n_points + 1;
    const double dr = cfg.dr;
    for (int n = 0; n < npts; ++n) {
        const double rn = cfg.r(n);
        const double weight = rn * dr;
        for (int row_ch = 0; row_ch < 3; ++row_ch) {
            const int row = 3 * n + row_ch;
            for (int col_ch = 0; col_ch < 3; ++col_ch) {
                const ChannelOperator& op = ops[3 * row_ch + col_ch];
                if (!op.d2 && !op.d1 && !op.mul) continue;
                const cplx c2 = op.eval_d2(rn);
                const cplx c1 = op.eval_d1(rn);
                const cplx c0 = op.eval_mul(rn);
                const cplx off_minus = c2 / (dr * dr) - c1 / (2.0 * dr);
                const cplx off_plus = c2 / (dr * dr) + c1 / (2.0 * dr);
                const cplx diag = -2.0 * c2 / (dr * dr) + c0;
                if (diag != cplx(0.0)) emit(row, 3 * n + col_ch, weight * diag);
                if (n > 0 && off_minus != cplx(0.0))
                    emit(row, 3 * (n - 1) + col_ch, weight * off_minus);
                if (n + 1 < npts && off_plus != cplx(0.0))
                    emit(row, 3 * (n + 1) + col_ch, weight * off_plus);
            }
        }
    }
}

Eigen::VectorXd b_diagonal(const SolverConfig& cfg) {
    Eigen::VectorXd b(cfg.dim());
    for (int n = 0; n <= cfg.n_points; ++n) {
        const double w = cfg.r(n) * cfg.dr;
        for (int ch = 0; ch < 3; ++ch) b[3 * n + ch] = w;
    }
    return b;
}

}  // namespace

DiscreteProblem assemble(const SolverConfig& config) {
    config.validate();
    const int dim = config.dim();
    DiscreteProblem problem;
    problem.config = config;
    problem.b_diag = b_diagonal(config);
    problem.A = Eigen::MatrixXcd::Zero(dim, dim);
    assemble_raw(config, [&](int i, int j, cplx v) { problem.A(i, j) += v; });

    // Enforce the exact transpose symmetry the continuum operator has in the
    // sqrt(B) basis (Hermiticity at phi = 0, complex symmetry at phi > 0),
    // after checking the raw stencils only miss it at the O(dr^2) level.
    Eigen::VectorXd s = problem.b_diag.cwiseSqrt();
    Eigen::MatrixXcd c = s.cwiseInverse().asDiagonal() * problem.A *
                         s.cwiseInverse().asDiagonal();
    const double denom = c.norm();
    problem.asymmetry = denom > 0.0 ? (c - c.transpose()).norm() / denom : 0.0;
    if (problem.asymmetry > asymmetry_tolerance(config))
        throw std::runtime_error("finite-difference asymmetry exceeds O(dr^2) envelope");
    c = 0.5 * (c + c.transpose()).eval();
    problem.A = s.asDiagonal() * c * s.asDiagonal();
    return problem;
}

BandedProblem assemble_banded(const SolverConfig& config) {
    config.validate();
    BandedProblem bp;
    bp.n = config.dim();
    bp.kl = 5;
    bp.ku = 5;
    bp.config = config;
    bp.b_diag = b_diagonal(config);
    bp.band.assign(static_cast<size_t>(bp.n) * (bp.kl + bp.ku + 1), cplx(0.0));

    Eigen::VectorXd s = bp.b_diag.cwiseSqrt();
    assemble_raw(config, [&](int i, int j, cplx v) {
        bp.at_ref(i, j) += v / (s[i] * s[j]);
    });

    double num = 0.0, den = 0.0;
    for (int j = 0; j < bp.n; ++j) {
        const int lo = std::max(0, j - bp.ku);
        const int hi = std::min(bp.n - 1, j + bp.kl);
        for (int i = lo; i <= hi; ++i) {
            const cplx cij = bp.at(i, j);
            den += std::norm(cij);
            if (i <= j) num += std::norm(cij - bp.at(j, i));
        }
    }
    bp.asymmetry = den > 0.0 ? std::sqrt(num / den) : 0.0;
    if (bp.asymmetry > asymmetry_tolerance(config))
        throw std::runtime_error("finite-difference asymmetry exceeds O(dr^2) envelope");
    for (int j = 0; j < bp.n; ++j) {
        const int hi = std::min(bp.n - 1, j + bp.kl);
        for (int i = j; i <= hi; ++i) {
            const cplx sym = 0.5 * (bp.at(i, j) + bp.at(j, i));
            bp.at_ref(i, j) = sym;
            if (i != j) bp.at_ref(j, i) = sym;
        }
    }
    return bp;
}

Eigen::VectorXcd BandedProblem::multiply(const Eigen::VectorXcd& x) const {
    if (x.size() != n) throw std::invalid_argument("dimension mismatch");
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(n);
    for (int j = 0; j < n; ++j) {
        const int lo = std::max(0, j - ku);
        const int hi = std::min(n - 1, j + kl);
        for (int i = lo; i <= hi; ++i) y[i] += at(i, j) * x[j];
    }
    return y;
}

Eigen::VectorXcd apply(const DiscreteProblem& problem, const Eigen::VectorXcd& x) {
    if (x.size() != problem.A.rows())
        throw std::invalid_argument("state dimension does not match the problem");
    return problem.A * x;
}

void dump_triplets(const DiscreteProblem& problem, std::ostream& os) {
    os.precision(17);
    for (int j = 0; j < problem.A.cols(); ++j)
        for (int i = 0; i < problem.A.rows(); ++i) {
            const cplx v = problem.A(i, j);
            if (v != cplx(0.0))
                os << i << ' ' << j << ' ' << v.real() << ' ' << v.imag() << '\n';
        }
}

}  // namespace chiptrap::heff
