#include "chiptrap/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace chiptrap::resonance {

namespace {

void check_compatible(const heff::SolverConfig& a, const heff::SolverConfig& b) {
    if (a.rho_sq != b.rho_sq || a.m != b.m || a.dr != b.dr || a.n_points != b.n_points ||
        a.h_reg != b.h_reg || a.shift_to_trap_bottom != b.shift_to_trap_bottom ||
        a.couple_channels != b.couple_channels)
        throw std::invalid_argument("spectra differ in more than the rotation angle");
    if (a.phi == b.phi)
        throw std::invalid_argument("classification needs two distinct rotation angles");
}

struct Match {
    double nearest = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
};

Match nearest_match(cplx e, const Eigen::VectorXcd& others) {
    Match m;
    for (int i = 0; i < others.size(); ++i) {
        const double d = std::abs(e - others[i]);
        if (d < m.nearest) {
            m.second = m.nearest;
            m.nearest = d;
        } else if (d < m.second) {
            m.second = d;
        }
    }
    return m;
}

// Signed distance of e from the ray branch + t exp(-2 i phi): positive above
// the ray (towards the real axis), measured after rotating the ray flat.
struct RayFrame {
    cplx branch;
    cplx direction;

    double along(cplx e) const { return ((e - branch) * std::conj(direction)).real(); }
    double above(cplx e) const { return ((e - branch) * std::conj(direction)).imag(); }
};

}  // namespace

Classification classify(const eigsolve::Spectrum& spec1, const eigsolve::Spectrum& spec2,
                        const ClassifyOptions& options) {
    if (!spec1.config || !spec2.config)
        throw std::invalid_argument("classification needs config-tagged spectra");
    const heff::SolverConfig& cfg = *spec1.config;
    check_compatible(cfg, *spec2.config);

    const double shift = cfg.shift_to_trap_bottom ? 1.0 / cfg.rho_sq : 0.0;
    Classification out;
    out.ray_zero.branch_point = cplx(-shift, 0.0);
    out.ray_zero.angle_expected = -2.0 * cfg.phi;
    out.ray_minus.branch_point = cplx(-1.0 / (cfg.h_reg * cfg.rho()) - shift, 0.0);
    out.ray_minus.angle_expected = -2.0 * cfg.phi;

    const RayFrame ray0{out.ray_zero.branch_point, std::polar(1.0, -2.0 * cfg.phi)};
    const RayFrame raym{out.ray_minus.branch_point, std::polar(1.0, -2.0 * cfg.phi)};

    struct Stable {
        cplx e;
        double distance;
        bool ambiguous;
    };
    std::vector<Stable> stable;
    for (int i = 0; i < spec1.eigenvalues.size(); ++i) {
        const cplx e = spec1.eigenvalues[i];
        const Match m = nearest_match(e, spec2.eigenvalues);
        const double eps = options.eps_match_rel * std::max(1.0, std::abs(e));
        if (m.nearest > eps) {
            out.continuum.push_back(e);
            continue;
        }
        stable.push_back({e, m.nearest, m.second <= eps});
    }

    std::vector<Resonance> states;
    for (const Stable& s : stable) {
        if (s.e.imag() > options.eps_real) {
            out.rejected.push_back(s.e);
            continue;
        }
        const bool on_real_axis = std::abs(s.e.imag()) <= options.eps_real;
        if (!on_real_axis) {
            // A stable eigenvalue sitting on (or under) a continuum ray is a
            // slow-moving continuum member, not a resonance.
            const double t0 = ray0.along(s.e);
            const double tm = raym.along(s.e);
            const bool on_ray0 = t0 > -0.1 && ray0.above(s.e) <
                                     options.ray_tol_rel * (1.0 + std::abs(t0));
            const bool on_raym = tm > -0.1 && raym.above(s.e) <
                                     options.ray_tol_rel * (1.0 + std::abs(tm));
            if (on_ray0 || on_raym) {
                out.continuum.push_back(s.e);
                continue;
            }
        } else {
            out.bound.push_back(s.e);
        }
        Resonance res;
        res.energy = s.e.real();
        const double width = -2.0 * s.e.imag();
        res.below_floor = width < options.gamma_floor;
        res.gamma = res.below_floor ? 0.0 : width;
        res.m = cfg.m;
        res.stability = s.distance;
        res.ambiguous = s.ambiguous;
        states.push_back(res);
    }

    std::sort(states.begin(), states.end(),
              [](const Resonance& a, const Resonance& b) { return a.energy < b.energy; });
    for (size_t i = 0; i < states.size(); ++i) states[i].label = static_cast<int>(i);

    if (options.compute_weights && !states.empty()) {
        const heff::BandedProblem banded = heff::assemble_banded(cfg);
        for (Resonance& res : states) {
            const auto vec = eigsolve::banded_eigenvector(banded, res.eigenvalue());
            if (vec.converged) {
                res.channel_weights = eigsolve::channel_weights(vec.vector);
                res.residual = vec.residual;
            }
        }
    }
    out.resonances = std::move(states);

    // Fit the psi_0 ray angle on its low-lying members; the psi_- ray bends
    // at intermediate radii and is only reported with its expected angle.
    double sum_xy = 0.0, sum_xx = 0.0;
    int count0 = 0, countm = 0;
    for (const cplx& e : out.continuum) {
        const cplx z = e - out.ray_zero.branch_point;
        const double t0 = ray0.along(e);
        const double tm = raym.along(e);
        const bool near0 = std::abs(ray0.above(e)) < 0.25 * (1.0 + std::abs(t0));
        const bool nearm = std::abs(raym.above(e)) < 0.25 * (1.0 + std::abs(tm));
        if (nearm && tm >= 0.0) ++countm;
        if (!near0 || nearm) continue;
        if (z.real() <= 0.05 || std::abs(z) > 8.0) continue;
        sum_xy += z.real() * z.imag();
        sum_xx += z.real() * z.real();
        ++count0;
    }
    out.ray_zero.member_count = count0;
    out.ray_minus.member_count = countm;
    if (count0 >= 3) out.ray_zero.angle_fitted = std::atan2(sum_xy, sum_xx);
    return out;
}

double splitting(const Resonance& res_plus, const Resonance& res_minus) {
    if (res_plus.m != 1 || res_minus.m != -1)
        throw std::invalid_argument("splitting expects an (m=+1, m=-1) pair");
    if (res_plus.label != res_minus.label)
        throw std::invalid_argument("splitting expects states of equal label");
    return res_minus.energy - res_plus.energy;
}

Classification solve_point(const heff::SolverConfig& config, double phi2,
                           const ClassifyOptions& options) {
    heff::SolverConfig cfg2 = config;
    cfg2.phi = phi2;
    const eigsolve::Spectrum s1 = eigsolve::solve(heff::assemble(config));
    const eigsolve::Spectrum s2 = eigsolve::solve(heff::assemble(cfg2));
    return classify(s1, s2, options);
}

std::vector<ScanPoint> scan(const std::vector<double>& rho_sq_list,
                            const std::vector<int>& m_list,
                            const heff::SolverConfig& base_config, double phi2,
                            const ClassifyOptions& options, int workers) {
    std::vector<ScanPoint> points;
    for (double rho_sq : rho_sq_list)
        for (int m : m_list) points.push_back({rho_sq, m, {}, {}});

    auto run_point = [&](ScanPoint& point) {
        try {
            heff::SolverConfig cfg = base_config;
            cfg.rho_sq = point.rho_sq;
            cfg.m = point.m;
            point.resonances = solve_point(cfg, phi2, options).resonances;
        } catch (const std::exception& err) {
            point.error = err.what();
        }
    };

    workers = std::max(1, workers);
    if (workers == 1 || points.size() <= 1) {
        for (ScanPoint& point : points) run_point(point);
        return points;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const size_t nthreads = std::min<size_t>(workers, points.size());
    for (size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            for (size_t i = next++; i < points.size(); i = next++) run_point(points[i]);
        });
    for (std::thread& th : pool) th.join();
    return points;
}

std::vector<Table1Row> table1_reference() {
    return {
        {0.20, 1.0e-3, 0.15},
        {0.25, 4.8e-3, 0.18},
        {0.31, 16.0e-3, 0.21},
        {0.40, 41.8e-3, 0.25},
    };
}

std::vector<Table1Row> run_table1(const heff::SolverConfig& base_config, double phi2,
                                  const ClassifyOptions& options, int workers) {
    std::vector<Table1Row> rows = table1_reference();
    std::vector<double> rho_list;
    for (const Table1Row& row : rows) rho_list.push_back(row.rho_sq);
    const auto points = scan(rho_list, {0, 1, -1}, base_config, phi2, options, workers);

    auto find = [&](double rho_sq, int m) -> const ScanPoint* {
        for (const ScanPoint& p : points)
            if (p.rho_sq == rho_sq && p.m == m) return &p;
        return nullptr;
    };
    for (Table1Row& row : rows) {
        const ScanPoint* p0 = find(row.rho_sq, 0);
        const ScanPoint* pp = find(row.rho_sq, 1);
        const ScanPoint* pm = find(row.rho_sq, -1);
        if (p0 && p0->ok() && !p0->resonances.empty())
            row.gamma_num = p0->resonances.front().gamma;
        if (pp && pp->ok() && !pp->resonances.empty() && pm && pm->ok() &&
            !pm->resonances.empty())
            row.splitting_num = splitting(pp->resonances.front(), pm->resonances.front());
    }
    return rows;
}

}  // namespace chiptrap::resonance
