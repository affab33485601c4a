#pragma once

#include <optional>
#include <vector>

#include "warplab/surface.hpp"

namespace warplab {

// Unit-normal sign convention. The Lorentzian sections of the theory use the
// future-pointing normal (<N, dt> < 0); the Riemannian ones pick the normal
// with negative support function (eta = f <N, dt> < 0, i.e. N = -dt on
// slices). The choice is an explicit caller decision and is recorded in the
// bundle.
enum class Orientation { FuturePointing, PastPointing, EtaNegative };

const char* orientation_name(Orientation o);
Orientation parse_orientation(const std::string& name);

// Everything pointwise-geometric about a vertical graph: first and second
// fundamental forms, normal, shape operator, curvatures, and the scalar
// functions (height, support function, hyperbolic angle) the theory is
// phrased in. Immutable after construction.
struct GeometryBundle {
    WarpedModel model;
    Orientation orientation;
    double sigma;  // normal sign: N = sigma * (dt - eps/f^2 Du) / sqrt(|q|)

    ScalarField u;           // height function h restricted to the graph
    VectorField du;          // coordinate partials u_i
    SymTensorField hess;     // u_ij
    SymTensorField g;        // induced metric  eps u_i u_j + f(u)^2 delta_ij
    SymTensorField g_inv;
    ScalarField normal_t;    // <N, dt>
    SymTensorField b;        // second fundamental form
    TensorField shape;       // shape operator A^i_j, A(v) = -D_v N
    ScalarField H;           // mean curvature, eps tr(A)/n
    ScalarField A_norm2;     // |A|^2 = tr(A^2)
    ScalarField eta;         // support function f(u) <N, dt>
    VectorField grad_h;      // tangential gradient components g^{ij} u_j
    ScalarField grad_h_norm2;
    std::optional<ScalarField> H2;      // normalized 2nd symmetric function, n >= 2
    std::optional<ScalarField> theta;   // hyperbolic angle, Lorentz only
    std::optional<ScalarField> R_scal;  // scalar curvature via Gauss equation, n >= 2
    std::optional<ScalarField> K;       // Gaussian curvature R/2, n == 2

    const Grid& grid() const { return u.grid(); }
    int dim() const { return model.fiber_dim; }
    const ScalarField& h() const { return u; }
};

// Builds the full bundle. Throws PointError naming the first invalid point
// if the surface is not valid everywhere, std::invalid_argument if the
// requested orientation does not exist for the model.
GeometryBundle build_bundle(const GraphSurface& surface, Orientation orientation);

// Mean curvature only; the evaluation path the CMC solver iterates on. Uses
// exactly the same discrete forms as build_bundle.
ScalarField mean_curvature_field(const GraphSurface& surface, Orientation orientation);

// Right-hand side of the height Laplacian identity
//   (log f)'(h) {eps n - |grad h|^2} + eps n H <N, dt>.
ScalarField laplacian_h_formula(const GeometryBundle& bundle);

// Right-hand side of the support-function Laplacian for constant H,
//   -eps eta {Ric_fiber(NT,NT) + (n-1)(log f)''(1 - <N,dt>^2) + |A|^2}
//   - eps n H f',
// with the fiber Ricci term an explicit zero (flat fiber). Throws
// std::invalid_argument when H deviates from constant by more than tol_H
// (default: the CMC admission band for the grid).
ScalarField laplacian_eta_warped(const GeometryBundle& bundle,
                                 std::optional<double> tol_H = std::nullopt);

// General conformal-field form, valid for variable H:
//   -eps n <V, grad H> - eps eta {Ric_bar(N,N) + |A|^2} - n {eps H phi + N(phi)}
// with V = f dt, phi = f', and the ambient Ricci in the closed warped form.
ScalarField laplacian_eta_conformal(const GeometryBundle& bundle);

// Scalar curvature field (n >= 2): n(n-1)(1 - H2) in the Lorentz exponential
// model, n(n-1)(H2 - 1) in the Riemannian one, general Gauss-equation route
// for other warps. Throws for n == 1.
ScalarField scalar_curvature(const GeometryBundle& bundle);

// Ricci lower-bound audit for n == 2 Lorentz bundles:
//   bound = (n-1) - n^2 max(H)^2 / 4, margin = min_p (K - bound/(n-1)).
struct RicciBoundCheck {
    double bound;
    double min_margin;
    std::vector<int> worst_point;
};
RicciBoundCheck ricci_lower_bound_check(const GeometryBundle& bundle);

// theta = arccosh(-<N, dt>), Lorentz, future-pointing orientation only.
ScalarField hyperbolic_angle(const GeometryBundle& bundle);

}  // namespace warplab
