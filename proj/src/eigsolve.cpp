#include "chiptrap/eigsolve.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace chiptrap::eigsolve {

extern "C" {
void zgeev_(const char* jobvl, const char* jobvr, const int* n, cplx* a, const int* lda,
            cplx* w, cplx* vl, const int* ldvl, cplx* vr, const int* ldvr, cplx* work,
            const int* lwork, double* rwork, int* info);
void zgbtrf_(const int* m, const int* n, const int* kl, const int* ku, cplx* ab,
             const int* ldab, int* ipiv, int* info);
void zgbtrs_(const char* trans, const int* n, const int* kl, const int* ku,
             const int* nrhs, const cplx* ab, const int* ldab, const int* ipiv, cplx* b,
             const int* ldb, int* info);
}

Eigen::MatrixXcd reduce(const heff::DiscreteProblem& problem) {
    const auto& b = problem.b_diag;
    if ((b.array() <= 0.0).any())
        throw std::invalid_argument("B must be strictly positive");
    Eigen::VectorXd inv_sqrt = b.cwiseSqrt().cwiseInverse();
    return inv_sqrt.asDiagonal() * problem.A * inv_sqrt.asDiagonal();
}

Spectrum eig_dense(const Eigen::MatrixXcd& c, int dim_cap) {
    if (c.rows() != c.cols()) throw std::invalid_argument("matrix must be square");
    const int n = static_cast<int>(c.rows());
    if (n == 0) throw std::invalid_argument("matrix must be non-empty");
    if (n > dim_cap) throw std::invalid_argument("matrix dimension exceeds solver cap");

    Eigen::MatrixXcd work_matrix = c;  // zgeev overwrites its input
    Spectrum spectrum;
    spectrum.eigenvalues.resize(n);
    std::vector<double> rwork(static_cast<size_t>(2 * n));
    int info = 0;
    int lwork = -1;
    cplx wkopt;
    zgeev_("N", "N", &n, work_matrix.data(), &n, spectrum.eigenvalues.data(), nullptr,
           &n, nullptr, &n, &wkopt, &lwork, rwork.data(), &info);
    if (info != 0) throw std::runtime_error("zgeev workspace query failed");
    lwork = static_cast<int>(wkopt.real());
    std::vector<cplx> work(static_cast<size_t>(lwork));
    zgeev_("N", "N", &n, work_matrix.data(), &n, spectrum.eigenvalues.data(), nullptr,
           &n, nullptr, &n, work.data(), &lwork, rwork.data(), &info);
    if (info < 0) throw std::runtime_error("zgeev: invalid argument");
    if (info > 0)
        throw std::runtime_error("eigensolver did not converge for the first " +
                                 std::to_string(info) + " eigenvalue(s)");
    spectrum.residuals = Eigen::VectorXd::Constant(
        n, std::numeric_limits<double>::quiet_NaN());
    return spectrum;
}

Spectrum solve(const heff::DiscreteProblem& problem) {
    Spectrum spectrum = eig_dense(reduce(problem));
    spectrum.config = problem.config;
    return spectrum;
}

namespace {

Eigen::VectorXcd random_unit(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(dist(rng), dist(rng));
    v /= v.norm();
    return v;
}

bool clustered(const std::vector<cplx>& eigenvalues, cplx e) {
    // Two spectrum members within the inverse-iteration basin of e.
    const double tol = 1.0e-6 * std::max(1.0, std::abs(e));
    int close = 0;
    for (const cplx& w : eigenvalues)
        if (std::abs(w - e) < tol && ++close > 1) return true;
    return false;
}

template <typename Solve, typename Multiply>
EigenvectorResult inverse_iteration(int n, cplx e, const EigenvectorOptions& options,
                                    Solve&& solve_shifted, Multiply&& multiply) {
    EigenvectorResult result;
    Eigen::VectorXcd x = random_unit(n, options.seed);
    for (int it = 1; it <= options.max_iterations; ++it) {
        Eigen::VectorXcd y = solve_shifted(x);
        const double norm = y.norm();
        if (!std::isfinite(norm) || norm == 0.0) break;
        x = y / norm;
        result.iterations = it;
        result.residual = (multiply(x) - e * x).norm();
        if (result.residual <= options.tol) {
            result.converged = true;
            break;
        }
    }
    result.vector = x;
    if (!options.known_eigenvalues.empty())
        result.ambiguous = clustered(options.known_eigenvalues, e);
    if (!result.converged && result.iterations == options.max_iterations)
        result.ambiguous = true;
    return result;
}

}  // namespace

EigenvectorResult eigenvector(const Eigen::MatrixXcd& c, cplx e,
                              const EigenvectorOptions& options) {
    if (c.rows() != c.cols()) throw std::invalid_argument("matrix must be square");
    const int n = static_cast<int>(c.rows());
    Eigen::MatrixXcd shifted = c;
    shifted.diagonal().array() -= e;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    return inverse_iteration(
        n, e, options, [&](const Eigen::VectorXcd& x) { return lu.solve(x); },
        [&](const Eigen::VectorXcd& x) { return c * x; });
}

Eigen::VectorXcd to_psi(const Eigen::VectorXcd& u, const Eigen::VectorXd& b_diag) {
    if (u.size() != b_diag.size()) throw std::invalid_argument("dimension mismatch");
    return b_diag.cwiseSqrt().cwiseInverse().asDiagonal() * u;
}

std::array<double, 3> channel_weights(const Eigen::VectorXcd& u) {
    if (u.size() % 3 != 0) throw std::invalid_argument("not a 3-channel vector");
    std::array<double, 3> w{0.0, 0.0, 0.0};
    for (int i = 0; i < u.size(); ++i) w[i % 3] += std::norm(u[i]);
    const double total = w[0] + w[1] + w[2];
    if (total > 0.0)
        for (double& v : w) v /= total;
    return w;
}

namespace {

// LU of the banded matrix C - sigma I in LAPACK zgbtrf layout.
class BandedShiftedLU {
  public:
    BandedShiftedLU(const heff::BandedProblem& problem, cplx sigma)
        : n_(problem.n), kl_(problem.kl), ku_(problem.ku), ldab_(2 * problem.kl + problem.ku + 1) {
        ab_.assign(static_cast<size_t>(ldab_) * n_, cplx(0.0));
        for (int j = 0; j < n_; ++j) {
            const int lo = std::max(0, j - ku_);
            const int hi = std::min(n_ - 1, j + kl_);
            for (int i = lo; i <= hi; ++i)
                ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] =
                    problem.at(i, j) - (i == j ? sigma : cplx(0.0));
        }
        ipiv_.resize(n_);
        int info = 0;
        zgbtrf_(&n_, &n_, &kl_, &ku_, ab_.data(), &ldab_, ipiv_.data(), &info);
        singular_ = info > 0;
        if (info < 0) throw std::runtime_error("zgbtrf: invalid argument");
    }

    bool singular() const { return singular_; }

    Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const {
        Eigen::VectorXcd x = rhs;
        const int nrhs = 1;
        int info = 0;
        zgbtrs_("N", &n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv_.data(), x.data(),
                &n_, &info);
        if (info != 0) throw std::runtime_error("zgbtrs failed");
        return x;
    }

  private:
    int n_, kl_, ku_, ldab_;
    std::vector<cplx> ab_;
    std::vector<int> ipiv_;
    bool singular_ = false;
};

}  // namespace

std::vector<TargetedEigenpair> shift_invert_eigs(const heff::BandedProblem& problem,
                                                 cplx sigma, int krylov_dim, double tol,
                                                 unsigned seed) {
    const int n = problem.n;
    if (krylov_dim < 2) throw std::invalid_argument("krylov_dim must be at least 2");
    const int k = std::min(krylov_dim, n);
    BandedShiftedLU lu(problem, sigma);
    if (lu.singular()) {
        // sigma is (numerically) an eigenvalue already; nudge it off.
        return shift_invert_eigs(problem, sigma + cplx(1.0e-10, 1.0e-10), krylov_dim,
                                 tol, seed);
    }

    Eigen::MatrixXcd v(n, k + 1);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(k + 1, k);
    v.col(0) = random_unit(n, seed);
    int steps = 0;
    for (int j = 0; j < k; ++j) {
        Eigen::VectorXcd w = lu.solve(v.col(j));
        for (int rep = 0; rep < 2; ++rep)  // re-orthogonalize once
            for (int i = 0; i <= j; ++i) {
                const cplx coeff = v.col(i).dot(w);
                if (rep == 0)
                    h(i, j) = coeff;
                else
                    h(i, j) += coeff;
                w -= coeff * v.col(i);
            }
        const double norm = w.norm();
        h(j + 1, j) = norm;
        steps = j + 1;
        if (norm < 1.0e-13) break;  // invariant subspace
        v.col(j + 1) = w / norm;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> small(h.topLeftCorner(steps, steps));
    std::vector<TargetedEigenpair> pairs;
    for (int i = 0; i < steps; ++i) {
        const cplx mu = small.eigenvalues()[i];
        if (std::abs(mu) < 1.0e-14) continue;
        TargetedEigenpair pair;
        pair.eigenvalue = sigma + 1.0 / mu;
        Eigen::VectorXcd x = v.leftCols(steps) * small.eigenvectors().col(i);
        x /= x.norm();
        pair.vector = x;
        pair.residual = (problem.multiply(x) - pair.eigenvalue * x).norm();
        if (pair.residual <= tol) pairs.push_back(std::move(pair));
    }
    std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
        return std::abs(a.eigenvalue - sigma) < std::abs(b.eigenvalue - sigma);
    });
    return pairs;
}

EigenvectorResult banded_eigenvector(const heff::BandedProblem& problem, cplx e,
                                     const EigenvectorOptions& options) {
    BandedShiftedLU lu(problem, e);
    if (lu.singular()) {
        BandedShiftedLU nudged(problem, e + cplx(1.0e-12, 0.0));
        return inverse_iteration(
            problem.n, e, options,
            [&](const Eigen::VectorXcd& x) { return nudged.solve(x); },
            [&](const Eigen::VectorXcd& x) { return problem.multiply(x); });
    }
    return inverse_iteration(
        problem.n, e, options, [&](const Eigen::VectorXcd& x) { return lu.solve(x); },
        [&](const Eigen::VectorXcd& x) { return problem.multiply(x); });
}

}  // namespace chiptrap::eigsolve
