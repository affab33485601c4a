#pragma once

#include <string>

#include "warplab/field.hpp"

namespace warplab {

// Closed-form warping profiles. Keeping f, f', f'' exact isolates all
// discretization error to the fiber directions.
enum class WarpKind { Exponential, Constant, Cosh };

struct WarpFamily {
    WarpKind kind = WarpKind::Exponential;

    double f(double t) const;
    double df(double t) const;
    double d2f(double t) const;

    static WarpFamily exponential() { return {WarpKind::Exponential}; }
    static WarpFamily constant() { return {WarpKind::Constant}; }
    static WarpFamily cosh_profile() { return {WarpKind::Cosh}; }

    std::string name() const;
    static WarpFamily parse(const std::string& name);
};

// Ambient space eps*dt^2 + f(t)^2 * delta on I x R^n. eps = +1 gives the
// Riemannian warped model (hyperbolic space for f = e^t), eps = -1 the
// Lorentzian one (steady state space for f = e^t).
struct WarpedModel {
    int epsilon;
    WarpFamily warp;
    int fiber_dim;

    WarpedModel(int eps, WarpFamily w, int n);

    bool lorentzian() const { return epsilon == -1; }

    static WarpedModel steady_state(int n) {
        return WarpedModel(-1, WarpFamily::exponential(), n);
    }
    static WarpedModel hyperbolic(int n) {
        return WarpedModel(+1, WarpFamily::exponential(), n);
    }
};

// Nonzero ambient Christoffel symbols of eps*dt^2 + f^2*delta at height t:
//   Gamma^t_{ij} = -eps f f' delta_ij      (gamma_t_ij)
//   Gamma^i_{tj} = (f'/f) delta^i_j        (gamma_i_tj)
// all others vanish. Unit-tested against the finite-difference
// metric-compatibility residual.
struct AmbientChristoffels {
    double gamma_t_ij;
    double gamma_i_tj;
};

AmbientChristoffels christoffels(const WarpedModel& model, double t);

// Max-norm residual of L_V g - 2 f' g for V = (f + v_shift) dt, evaluated on
// the coordinate basis at the given t samples. The covariant derivative uses
// the closed-form Christoffels; the partial-derivative term is estimated by
// finite differences along axis 0 of the sample field, so for analytic warps
// the residual is bounded by the stencil error and vanishes identically for
// the constant warp. v_shift != 0 is the deliberate negative control.
double conformality_residual(const WarpedModel& model, const ScalarField& t_samples,
                             double v_shift = 0.0);

}  // namespace warplab
