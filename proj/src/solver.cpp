#include "warplab/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "warplab/errors.hpp"

namespace warplab {

namespace {

constexpr double kDampingFloor = 1.0 / 1024.0;  // 2^-10
constexpr double kInnerRelTol = 1e-6;
constexpr int kMaxInnerSweeps = 20000;
constexpr double kJacobiOmega = 0.8;

std::vector<std::size_t> interior_points(const Grid& grid) {
    std::vector<std::size_t> idx;
    idx.reserve(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) {
        if (grid.is_interior(p, 1)) idx.push_back(p);
    }
    return idx;
}

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Interior residual of the prescribed-curvature operator for the model's
// standard orientation.
class CmcResidual {
public:
    CmcResidual(const WarpedModel& model, const Grid& grid, double target)
        : model_(model),
          grid_(grid),
          target_(target),
          orientation_(model.lorentzian() ? Orientation::FuturePointing
                                          : Orientation::EtaNegative),
          interior_(interior_points(grid)) {}

    const std::vector<std::size_t>& interior() const { return interior_; }

    // Returns false if the surface leaves the spacelike cone.
    bool eval(const ScalarField& u, std::vector<double>& out) const {
        GraphSurface s = make_graph(model_, u);
        if (!s.all_valid) return false;
        ScalarField H = mean_curvature_field(s, orientation_);
        out.resize(interior_.size());
        for (std::size_t k = 0; k < interior_.size(); ++k) {
            out[k] = H[interior_[k]] - target_;
        }
        return true;
    }

    // Finite-difference directional derivative J v, with v given on interior
    // points. Perturbation magnitude scales with the iterate.
    bool apply_jacobian(const ScalarField& u, const std::vector<double>& base,
                        const std::vector<double>& v, std::vector<double>& out) const {
        double vnorm = sup_norm(v);
        if (vnorm == 0.0) {
            out.assign(v.size(), 0.0);
            return true;
        }
        double eps = std::sqrt(std::numeric_limits<double>::epsilon()) *
                     (1.0 + u.max_abs()) / vnorm;
        ScalarField up = u;
        for (std::size_t k = 0; k < interior_.size(); ++k) {
            up[interior_[k]] += eps * v[k];
        }
        std::vector<double> pert;
        for (int attempt = 0; attempt < 4; ++attempt) {
            if (eval(up, pert)) {
                out.resize(v.size());
                for (std::size_t k = 0; k < v.size(); ++k) {
                    out[k] = (pert[k] - base[k]) / eps;
                }
                return true;
            }
            // Shrink the probe if it fell outside the spacelike cone.
            for (std::size_t k = 0; k < interior_.size(); ++k) {
                up[interior_[k]] = u[interior_[k]] + 0.1 * eps * v[k];
            }
            eps *= 0.1;
        }
        return false;
    }

private:
    const WarpedModel& model_;
    const Grid& grid_;
    double target_;
    Orientation orientation_;
    std::vector<std::size_t> interior_;
};

// Diagonal of the FD Jacobian by stencil coloring: the H[u] stencil has
// radius 1 in each axis, so perturbation classes spaced 3 apart per axis do
// not interact and 3^dim probes recover every diagonal entry.
bool probe_diagonal(const CmcResidual& res, const ScalarField& u,
                    const std::vector<double>& base, std::vector<double>& diag) {
    const Grid& g = u.grid();
    const int dim = g.dim();
    int ncolors = 1;
    for (int a = 0; a < dim; ++a) ncolors *= 3;

    const auto& interior = res.interior();
    diag.assign(interior.size(), 0.0);
    std::vector<double> v(interior.size());
    std::vector<double> jv;

    for (int color = 0; color < ncolors; ++color) {
        for (std::size_t k = 0; k < interior.size(); ++k) {
            auto multi = g.unflatten(interior[k]);
            int c = 0;
            for (int a = 0; a < dim; ++a) c = c * 3 + (multi[static_cast<std::size_t>(a)] % 3);
            v[k] = (c == color) ? 1.0 : 0.0;
        }
        if (!res.apply_jacobian(u, base, v, jv)) return false;
        for (std::size_t k = 0; k < interior.size(); ++k) {
            if (v[k] != 0.0) diag[k] = jv[k];
        }
    }
    for (double d : diag) {
        if (d == 0.0 || !std::isfinite(d)) return false;
    }
    return true;
}

// Stationary damped-Jacobi iteration on J delta = rhs, matrix free.
int jacobi_solve(const CmcResidual& res, const ScalarField& u,
                 const std::vector<double>& base, const std::vector<double>& rhs,
                 const std::vector<double>& diag, std::vector<double>& delta) {
    const std::size_t m = rhs.size();
    delta.assign(m, 0.0);
    std::vector<double> jd(m, 0.0);
    std::vector<double> lin(m);

    const double rhs_norm = sup_norm(rhs);
    const double target = kInnerRelTol * rhs_norm;
    double best = rhs_norm;
    int stagnant = 0;

    int sweep = 0;
    for (; sweep < kMaxInnerSweeps; ++sweep) {
        for (std::size_t k = 0; k < m; ++k) lin[k] = rhs[k] - jd[k];
        double lnorm = sup_norm(lin);
        if (lnorm <= target) break;
        if (lnorm < 0.999 * best) {
            best = lnorm;
            stagnant = 0;
        } else if (++stagnant > 200) {
            break;  // stalled: hand the current direction to the line search
        }
        for (std::size_t k = 0; k < m; ++k) delta[k] += kJacobiOmega * lin[k] / diag[k];
        if (!res.apply_jacobian(u, base, delta, jd)) {
            // Probe left the cone; shrink the direction and keep going.
            for (std::size_t k = 0; k < m; ++k) delta[k] *= 0.5;
            if (!res.apply_jacobian(u, base, delta, jd)) break;
        }
    }
    return sweep;
}

}  // namespace

void SolveConfig::validate() const {
    if (!(newton_tol > 0.0)) throw std::invalid_argument("SolveConfig: newton_tol must be > 0");
    if (max_iters < 1) throw std::invalid_argument("SolveConfig: max_iters must be >= 1");
    if (!(damping > 0.0 && damping <= 1.0)) {
        throw std::invalid_argument("SolveConfig: damping must lie in (0, 1]");
    }
}

ScalarField harmonic_extension(const Grid& grid, const ScalarField& boundary_data) {
    require_same_grid(grid, boundary_data.grid(), "harmonic_extension");
    const int dim = grid.dim();

    // Seed the interior with the boundary mean, then SOR on the flat
    // Laplacian. Constant data is reproduced exactly with zero sweeps.
    double bsum = 0.0;
    std::size_t bcount = 0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
        if (!grid.is_interior(p, 1)) {
            bsum += boundary_data[p];
            ++bcount;
        }
    }
    const double bmean = bsum / static_cast<double>(bcount);

    ScalarField u(grid, bmean);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        if (!grid.is_interior(p, 1)) u[p] = boundary_data[p];
    }

    std::vector<double> wa(static_cast<std::size_t>(dim));
    double wsum = 0.0;
    for (int a = 0; a < dim; ++a) {
        wa[static_cast<std::size_t>(a)] = 1.0 / (grid.spacing(a) * grid.spacing(a));
        wsum += 2.0 * wa[static_cast<std::size_t>(a)];
    }

    const double omega = 1.7;
    const double tol = 1e-13 * (1.0 + boundary_data.max_abs());
    auto interior = interior_points(grid);
    for (int sweep = 0; sweep < 20000; ++sweep) {
        double change = 0.0;
        for (std::size_t p : interior) {
            double acc = 0.0;
            for (int a = 0; a < dim; ++a) {
                auto s = static_cast<std::size_t>(grid.stride(a));
                acc += wa[static_cast<std::size_t>(a)] * (u[p + s] + u[p - s]);
            }
            double unew = (1.0 - omega) * u[p] + omega * acc / wsum;
            change = std::max(change, std::fabs(unew - u[p]));
            u[p] = unew;
        }
        if (change <= tol) break;
    }
    return u;
}

GraphSurface solve_cmc(const WarpedModel& model, const Grid& grid,
                       const SolveConfig& cfg, SolveReport* report) {
    cfg.validate();
    if (grid.boundary() != Boundary::Dirichlet) {
        throw std::invalid_argument("solve_cmc: grid boundary mode must be Dirichlet");
    }

    SolveReport local;
    SolveReport& rep = report ? *report : local;
    rep = SolveReport{};

    CmcResidual res(model, grid, cfg.H_target);
    const auto& interior = res.interior();

    ScalarField u = harmonic_extension(grid, cfg.boundary_data);
    std::vector<double> r;
    if (!res.eval(u, r)) {
        throw SolveError("solve_cmc: left the spacelike cone (initial guess invalid; "
                         "boundary data too steep)",
                         std::numeric_limits<double>::infinity(), 0);
    }
    double rnorm = sup_norm(r);
    rep.initial_residual = rnorm;
    rep.final_residual = rnorm;

    std::vector<double> diag, delta, rhs, rtrial;
    for (int it = 0; it < cfg.max_iters; ++it) {
        if (rnorm <= cfg.newton_tol) {
            rep.converged = true;
            rep.message = "converged";
            rep.final_residual = rnorm;
            return make_graph(model, std::move(u));
        }

        if (!probe_diagonal(res, u, r, diag)) {
            throw SolveError("solve_cmc: Jacobian diagonal probe failed", rnorm, it);
        }
        rhs.resize(r.size());
        for (std::size_t k = 0; k < r.size(); ++k) rhs[k] = -r[k];
        int sweeps = jacobi_solve(res, u, r, rhs, diag, delta);
        rep.inner_history.push_back(sweeps);

        // Line search: halve the damping on residual increase or validity
        // loss; floor 2^-10, then abort.
        double lambda = cfg.damping;
        bool accepted = false;
        bool blocked_by_cone = false;
        ScalarField trial = u;
        while (lambda >= kDampingFloor) {
            for (std::size_t k = 0; k < interior.size(); ++k) {
                trial[interior[k]] = u[interior[k]] + lambda * delta[k];
            }
            if (!res.eval(trial, rtrial)) {
                blocked_by_cone = true;
                lambda *= 0.5;
                continue;
            }
            double tnorm = sup_norm(rtrial);
            if (tnorm < rnorm) {
                u = trial;
                r = rtrial;
                rnorm = tnorm;
                rep.damping_history.push_back(lambda);
                accepted = true;
                break;
            }
            blocked_by_cone = false;
            lambda *= 0.5;
        }
        rep.iterations = it + 1;
        rep.final_residual = rnorm;
        if (!accepted) {
            if (blocked_by_cone) {
                throw SolveError("solve_cmc: left the spacelike cone (no damping keeps "
                                 "the iterate spacelike)",
                                 rnorm, rep.iterations);
            }
            throw SolveError("solve_cmc: line search stalled at damping floor "
                             "(residual " + std::to_string(rnorm) + ")",
                             rnorm, rep.iterations);
        }
    }

    if (rnorm <= cfg.newton_tol) {
        rep.converged = true;
        rep.message = "converged";
        rep.final_residual = rnorm;
        return make_graph(model, std::move(u));
    }
    throw SolveError("solve_cmc: no convergence after " + std::to_string(cfg.max_iters) +
                         " iterations (residual " + std::to_string(rnorm) + ")",
                     rnorm, cfg.max_iters);
}

}  // namespace warplab
