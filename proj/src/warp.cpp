#include "warplab/warp.hpp"

#include <cmath>
#include <stdexcept>

#include "warplab/fd.hpp"

namespace warplab {

double WarpFamily::f(double t) const {
    switch (kind) {
        case WarpKind::Exponential: return std::exp(t);
        case WarpKind::Constant: return 1.0;
        case WarpKind::Cosh: return std::cosh(t);
    }
    return 0.0;
}

double WarpFamily::df(double t) const {
    switch (kind) {
        case WarpKind::Exponential: return std::exp(t);
        case WarpKind::Constant: return 0.0;
        case WarpKind::Cosh: return std::sinh(t);
    }
    return 0.0;
}

double WarpFamily::d2f(double t) const {
    switch (kind) {
        case WarpKind::Exponential: return std::exp(t);
        case WarpKind::Constant: return 0.0;
        case WarpKind::Cosh: return std::cosh(t);
    }
    return 0.0;
}

std::string WarpFamily::name() const {
    switch (kind) {
        case WarpKind::Exponential: return "exponential";
        case WarpKind::Constant: return "constant";
        case WarpKind::Cosh: return "cosh";
    }
    return "?";
}

WarpFamily WarpFamily::parse(const std::string& name) {
    if (name == "exponential") return exponential();
    if (name == "constant") return constant();
    if (name == "cosh") return cosh_profile();
    throw std::invalid_argument("unknown warp family: " + name);
}

WarpedModel::WarpedModel(int eps, WarpFamily w, int n)
    : epsilon(eps), warp(w), fiber_dim(n) {
    if (eps != -1 && eps != 1) {
        throw std::invalid_argument("WarpedModel: epsilon must be -1 or +1");
    }
    if (n < 1) {
        throw std::invalid_argument("WarpedModel: fiber dimension must be >= 1");
    }
}

AmbientChristoffels christoffels(const WarpedModel& model, double t) {
    double f = model.warp.f(t);
    double df = model.warp.df(t);
    return {-model.epsilon * f * df, df / f};
}

double conformality_residual(const WarpedModel& model, const ScalarField& t_samples,
                             double v_shift) {
    const Grid& g = t_samples.grid();
    const std::size_t n = t_samples.size();
    const double eps = static_cast<double>(model.epsilon);

    // Covector components of V: V_t = eps * (f + v_shift), V_i = 0.
    ScalarField v_t(g);
    for (std::size_t p = 0; p < n; ++p) {
        v_t[p] = eps * (model.warp.f(t_samples[p]) + v_shift);
    }

    // d/dt of V_t by finite differences along axis 0: chain rule through the
    // sampled t values. Points where the t samples are locally constant along
    // axis 0 contribute only the algebraic components.
    ScalarField dvt_dx = partial_derivative(v_t, 0, 1);
    ScalarField dt_dx = partial_derivative(t_samples, 0, 1);

    double residual = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        const double t = t_samples[p];
        const double f = model.warp.f(t);
        const double df = model.warp.df(t);
        const AmbientChristoffels gam = christoffels(model, t);

        // (t,t): 2 (d_t V_t - Gamma^a_tt V_a) - 2 phi g_tt, with g_tt = eps.
        if (std::fabs(dt_dx[p]) > 1e-14) {
            double dvdt = dvt_dx[p] / dt_dx[p];
            residual = std::max(residual, std::fabs(2.0 * dvdt - 2.0 * df * eps));
        }

        // (i,j): -2 Gamma^t_{ij} V_t - 2 phi g_ij on the diagonal,
        // g_ij = f^2 delta_ij. Off-diagonal terms vanish identically.
        double lij = -2.0 * gam.gamma_t_ij * v_t[p];
        double target = 2.0 * df * f * f;
        residual = std::max(residual, std::fabs(lij - target));

        // (t,i): both covariant terms vanish for V = (f + shift) dt.
    }
    return residual;
}

}  // namespace warplab
