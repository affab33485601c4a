#include "warplab/bundle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "warplab/errors.hpp"
#include "warplab/fd.hpp"
#include "warplab/linalg.hpp"
#include "warplab/tolerance.hpp"

namespace warplab {

namespace {

// Flat fiber: the fiber Ricci contribution to the support-function Laplacian
// is identically zero, but it is kept as an explicit input so the evaluator
// matches the warped-product formula term for term.
constexpr double kFiberRicciNN = 0.0;

double orientation_sign(const WarpedModel& model, Orientation orientation) {
    if (model.lorentzian()) {
        switch (orientation) {
            case Orientation::FuturePointing: return +1.0;  // <N, dt> < 0
            case Orientation::PastPointing: return -1.0;
            case Orientation::EtaNegative: return +1.0;     // same normal: f > 0
        }
    } else {
        if (orientation == Orientation::EtaNegative) return -1.0;  // N = -dt on slices
        throw std::invalid_argument(
            "orientation impossible: Riemannian bundles use EtaNegative");
    }
    throw std::invalid_argument("unknown orientation");
}

// Ambient Ricci in the normal direction for eps dt^2 + f^2 delta with flat
// fiber, evaluated at height t and <N, dt> = nt:
//   -(f''/f + (n-1)(f'/f)^2) - (n-1) (f'/f)' nt^2.
double ambient_ricci_NN(const WarpedModel& model, double t, double nt) {
    const double f = model.warp.f(t);
    const double df = model.warp.df(t);
    const double d2f = model.warp.d2f(t);
    const double lf1 = df / f;
    const double lf2 = d2f / f - lf1 * lf1;  // (log f)'' = (f'/f)'
    const int n = model.fiber_dim;
    return -(d2f / f + (n - 1) * lf1 * lf1) - (n - 1) * lf2 * nt * nt;
}

// Ambient scalar curvature of the warped product, flat fiber.
double ambient_scalar(const WarpedModel& model, double t) {
    const double f = model.warp.f(t);
    const double df = model.warp.df(t);
    const double d2f = model.warp.d2f(t);
    const int n = model.fiber_dim;
    return -model.epsilon * (2.0 * n * d2f / f + n * (n - 1) * (df / f) * (df / f));
}

}  // namespace

const char* orientation_name(Orientation o) {
    switch (o) {
        case Orientation::FuturePointing: return "future";
        case Orientation::PastPointing: return "past";
        case Orientation::EtaNegative: return "eta_negative";
    }
    return "?";
}

Orientation parse_orientation(const std::string& name) {
    if (name == "future") return Orientation::FuturePointing;
    if (name == "past") return Orientation::PastPointing;
    if (name == "eta_negative") return Orientation::EtaNegative;
    throw std::invalid_argument("unknown orientation: " + name);
}

ScalarField mean_curvature_field(const GraphSurface& surface, Orientation orientation) {
    const WarpedModel& model = surface.model;
    const Grid& grid = surface.u.grid();
    const int n = grid.dim();
    const double eps = static_cast<double>(model.epsilon);
    const double sigma = orientation_sign(model, orientation);

    if (!surface.all_valid) {
        auto bad = grid.unflatten(*surface.first_invalid);
        throw PointError("mean_curvature_field: surface invalid at " + format_point(bad), bad);
    }

    VectorField du = gradient(surface.u);
    SymTensorField he = hessian(surface.u);

    ScalarField H(grid);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const double t = surface.u[p];
        const double f = model.warp.f(t);
        const double df = model.warp.df(t);
        const double f2 = f * f;

        double du2 = 0.0;
        for (int a = 0; a < n; ++a) du2 += du.at(a, p) * du.at(a, p);
        const double q = eps + du2 / f2;
        const double rs = std::sqrt(std::fabs(q));

        // tr A = g^{ij} b_ij with
        //   b_ij   = sigma eps (u_ij - eps f f' delta_ij - 2 (f'/f) u_i u_j)/sqrt|q|
        //   g^{ij} = (1/f^2) (delta_ij - u_i u_j / (f^2 q))
        double tr = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double ui = du.at(i, p);
                const double uj = du.at(j, p);
                double bij = he.at_ij(i, j, p) - 2.0 * (df / f) * ui * uj;
                if (i == j) bij -= eps * f * df;
                double gij = ((i == j) ? 1.0 : 0.0) - ui * uj / (f2 * q);
                tr += gij * bij;
            }
        }
        tr *= sigma * eps / (f2 * rs);
        H[p] = eps * tr / static_cast<double>(n);
    }
    H.ensure_finite("mean_curvature_field");
    return H;
}

GeometryBundle build_bundle(const GraphSurface& surface, Orientation orientation) {
    const WarpedModel& model = surface.model;
    const Grid& grid = surface.u.grid();
    const int n = grid.dim();
    const double eps = static_cast<double>(model.epsilon);
    const double sigma = orientation_sign(model, orientation);
    const std::size_t npts = grid.size();

    if (!surface.all_valid) {
        auto bad = grid.unflatten(*surface.first_invalid);
        throw PointError("build_bundle: surface invalid at " + format_point(bad), bad);
    }

    GeometryBundle bd{model,
                      orientation,
                      sigma,
                      surface.u,
                      gradient(surface.u),
                      hessian(surface.u),
                      SymTensorField(grid),
                      SymTensorField(grid),
                      ScalarField(grid),
                      SymTensorField(grid),
                      TensorField(grid),
                      ScalarField(grid),
                      ScalarField(grid),
                      ScalarField(grid),
                      VectorField(grid),
                      ScalarField(grid),
                      std::nullopt,
                      std::nullopt,
                      std::nullopt,
                      std::nullopt};

    if (n >= 2) bd.H2.emplace(grid);
    if (model.lorentzian() && sigma > 0.0) bd.theta.emplace(grid);  // needs <N,dt> < 0
    if (n >= 2) bd.R_scal.emplace(grid);
    if (n == 2) bd.K.emplace(grid);

    std::vector<double> gm(static_cast<std::size_t>(n) * n);
    std::vector<double> bm(static_cast<std::size_t>(n) * n);
    std::vector<double> sym(static_cast<std::size_t>(n) * n);
    std::vector<double> lam(static_cast<std::size_t>(n));

    for (std::size_t p = 0; p < npts; ++p) {
        const double t = surface.u[p];
        const double f = model.warp.f(t);
        const double df = model.warp.df(t);
        const double f2 = f * f;

        double du2 = 0.0;
        for (int a = 0; a < n; ++a) du2 += bd.du.at(a, p) * bd.du.at(a, p);
        const double q = eps + du2 / f2;
        const double rs = std::sqrt(std::fabs(q));

        bd.normal_t[p] = sigma * eps / rs;
        bd.eta[p] = f * bd.normal_t[p];

        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                const double ui = bd.du.at(i, p);
                const double uj = bd.du.at(j, p);
                double gij = eps * ui * uj + ((i == j) ? f2 : 0.0);
                double ginv = (((i == j) ? 1.0 : 0.0) - ui * uj / (f2 * q)) / f2;
                double bij = bd.hess.at_ij(i, j, p) - 2.0 * (df / f) * ui * uj;
                if (i == j) bij -= eps * f * df;
                bij *= sigma * eps / rs;
                bd.g.at_ij(i, j, p) = gij;
                bd.g_inv.at_ij(i, j, p) = ginv;
                bd.b.at_ij(i, j, p) = bij;
            }
        }

        // Shape operator A^i_j = g^{ik} b_kj and its invariants.
        double tr = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double aij = 0.0;
                for (int k = 0; k < n; ++k) {
                    aij += bd.g_inv.at_ij(i, k, p) * bd.b.at_ij(k, j, p);
                }
                bd.shape.at_ij(i, j, p) = aij;
                if (i == j) tr += aij;
            }
        }
        bd.H[p] = eps * tr / static_cast<double>(n);

        double hs = 0.0;  // tr(A^2), basis independent for g-self-adjoint A
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                hs += bd.shape.at_ij(i, j, p) * bd.shape.at_ij(j, i, p);
            }
        }
        bd.A_norm2[p] = hs;

        // Tangential gradient of h.
        double gh2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double gi = 0.0;
            for (int j = 0; j < n; ++j) gi += bd.g_inv.at_ij(i, j, p) * bd.du.at(j, p);
            bd.grad_h.at(i, p) = gi;
            gh2 += bd.du.at(i, p) * gi;
        }
        bd.grad_h_norm2[p] = gh2;

        // Principal curvatures via the metric-orthonormalized representative:
        // eigenvalues of L^{-1} b L^{-T} for g = L L^T.
        if (n >= 2) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    gm[static_cast<std::size_t>(i) * n + j] = bd.g.at_ij(i, j, p);
                    bm[static_cast<std::size_t>(i) * n + j] = bd.b.at_ij(i, j, p);
                }
            }
            if (!linalg::cholesky(gm, n)) {
                auto bad = grid.unflatten(p);
                throw PointError("build_bundle: induced metric not positive definite at " +
                                     format_point(bad),
                                 bad);
            }
            linalg::congruence_inv_cholesky(gm, bm, sym, n);
            linalg::sym_eigenvalues(sym, lam, n);
            double s2 = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    s2 += lam[static_cast<std::size_t>(i)] * lam[static_cast<std::size_t>(j)];
                }
            }
            (*bd.H2)[p] = 2.0 * s2 / (static_cast<double>(n) * (n - 1));
        }

        if (bd.theta) {
            double c = -bd.normal_t[p];
            if (c < 1.0 - 1e-9) {
                auto bad = grid.unflatten(p);
                throw PointError(
                    "build_bundle: cosh(theta) = " + std::to_string(c) +
                        " < 1 at " + format_point(bad) + " (spacelike invariant violated)",
                    bad);
            }
            (*bd.theta)[p] = std::acosh(std::max(c, 1.0));
        }

        if (bd.R_scal) {
            double r;
            if (model.warp.kind == WarpKind::Exponential) {
                r = (model.epsilon == -1)
                        ? n * (n - 1) * (1.0 - (*bd.H2)[p])
                        : n * (n - 1) * ((*bd.H2)[p] - 1.0);
            } else {
                const double nt = bd.normal_t[p];
                r = ambient_scalar(model, t) - 2.0 * eps * ambient_ricci_NN(model, t, nt) +
                    eps * (static_cast<double>(n) * n * bd.H[p] * bd.H[p] - bd.A_norm2[p]);
            }
            (*bd.R_scal)[p] = r;
            if (bd.K) (*bd.K)[p] = 0.5 * r;
        }
    }

    if (orientation == Orientation::EtaNegative) {
        for (std::size_t p = 0; p < npts; ++p) {
            if (!(bd.eta[p] < 0.0)) {
                auto bad = grid.unflatten(p);
                throw PointError("build_bundle: eta vanishes or changes sign at " +
                                     format_point(bad),
                                 bad);
            }
        }
    }

    bd.H.ensure_finite("build_bundle H");
    bd.eta.ensure_finite("build_bundle eta");
    bd.A_norm2.ensure_finite("build_bundle |A|^2");
    return bd;
}

ScalarField laplacian_h_formula(const GeometryBundle& bd) {
    const double eps = static_cast<double>(bd.model.epsilon);
    const double n = static_cast<double>(bd.dim());
    ScalarField out(bd.grid());
    for (std::size_t p = 0; p < out.size(); ++p) {
        const double t = bd.u[p];
        const double logf1 = bd.model.warp.df(t) / bd.model.warp.f(t);
        out[p] = logf1 * (eps * n - bd.grad_h_norm2[p]) + eps * n * bd.H[p] * bd.normal_t[p];
    }
    return out;
}

ScalarField laplacian_eta_warped(const GeometryBundle& bd, std::optional<double> tol_H) {
    const double eps = static_cast<double>(bd.model.epsilon);
    const double n = static_cast<double>(bd.dim());
    const double tol = tol_H.value_or(cmc_tol(bd.grid()));

    const double mean_H = bd.H.mean();
    double dev = 0.0;
    for (std::size_t p = 0; p < bd.H.size(); ++p) {
        dev = std::max(dev, std::fabs(bd.H[p] - mean_H));
    }
    if (dev > tol) {
        throw std::invalid_argument(
            "laplacian_eta_warped: formula requires CMC (max |H - mean H| = " +
            std::to_string(dev) + " > " + std::to_string(tol) +
            "); use laplacian_eta_conformal for variable H");
    }

    ScalarField out(bd.grid());
    for (std::size_t p = 0; p < out.size(); ++p) {
        const double t = bd.u[p];
        const double f = bd.model.warp.f(t);
        const double df = bd.model.warp.df(t);
        const double d2f = bd.model.warp.d2f(t);
        const double logf2 = d2f / f - (df / f) * (df / f);
        const double nt = bd.normal_t[p];
        const double brace =
            kFiberRicciNN + (n - 1.0) * logf2 * (1.0 - nt * nt) + bd.A_norm2[p];
        out[p] = -eps * bd.eta[p] * brace - eps * n * bd.H[p] * df;
    }
    return out;
}

ScalarField laplacian_eta_conformal(const GeometryBundle& bd) {
    const double eps = static_cast<double>(bd.model.epsilon);
    const int n = bd.dim();
    const double nd = static_cast<double>(n);

    std::vector<ScalarField> dH;
    dH.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) dH.push_back(partial_derivative(bd.H, a, 1));

    ScalarField out(bd.grid());
    for (std::size_t p = 0; p < out.size(); ++p) {
        const double t = bd.u[p];
        const double f = bd.model.warp.f(t);
        const double df = bd.model.warp.df(t);
        const double d2f = bd.model.warp.d2f(t);
        const double nt = bd.normal_t[p];

        // <V, grad H> = eps f g^{ij} u_i d_j H.
        double vh = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                vh += bd.g_inv.at_ij(i, j, p) * bd.du.at(i, p) * dH[static_cast<std::size_t>(j)][p];
            }
        }
        vh *= eps * f;

        const double ric = ambient_ricci_NN(bd.model, t, nt);
        const double nphi = eps * d2f * nt;  // N(f') = eps f'' <N, dt>
        out[p] = -eps * nd * vh - eps * bd.eta[p] * (ric + bd.A_norm2[p]) -
                 nd * (eps * bd.H[p] * df + nphi);
    }
    return out;
}

ScalarField scalar_curvature(const GeometryBundle& bd) {
    if (bd.dim() < 2) {
        throw std::invalid_argument("scalar_curvature: unsupported for n = 1");
    }
    return *bd.R_scal;
}

RicciBoundCheck ricci_lower_bound_check(const GeometryBundle& bd) {
    if (!bd.model.lorentzian()) {
        throw std::invalid_argument("ricci_lower_bound_check: Lorentz model required");
    }
    if (bd.dim() != 2) {
        throw std::invalid_argument("ricci_lower_bound_check: n=2 required");
    }
    const double n = 2.0;
    double max_h2 = 0.0;
    for (std::size_t p = 0; p < bd.H.size(); ++p) {
        max_h2 = std::max(max_h2, bd.H[p] * bd.H[p]);
    }
    const double bound = (n - 1.0) - n * n * max_h2 / 4.0;

    const ScalarField& K = *bd.K;
    double margin = K[0] - bound;  // bound/(n-1) with n = 2
    std::size_t worst = 0;
    for (std::size_t p = 1; p < K.size(); ++p) {
        double m = K[p] - bound;
        if (m < margin) {
            margin = m;
            worst = p;
        }
    }
    return {bound, margin, bd.grid().unflatten(worst)};
}

ScalarField hyperbolic_angle(const GeometryBundle& bd) {
    if (!bd.model.lorentzian() || !bd.theta) {
        throw std::invalid_argument("hyperbolic_angle: Lorentz bundle with <N,dt> < 0 required");
    }
    if (bd.sigma != 1.0) {
        throw std::invalid_argument("hyperbolic_angle: future-pointing orientation required");
    }
    return *bd.theta;
}

}  // namespace warplab
