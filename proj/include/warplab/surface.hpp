#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "warplab/field.hpp"
#include "warplab/warp.hpp"

namespace warplab {

// Vertical graph psi(x) = (u(x), x) over the fiber domain, together with its
// pointwise validity: positive definiteness of the induced metric
// g_ij = eps u_i u_j + f(u)^2 delta_ij. In the Riemannian model this always
// holds; in the Lorentzian one it is the spacelike condition and amounts to
// |Du|^2 < f(u)^2 in the fiber chart.
struct GraphSurface {
    WarpedModel model;
    ScalarField u;
    std::vector<std::uint8_t> validity;
    bool all_valid = false;
    std::optional<std::size_t> first_invalid;
};

GraphSurface make_graph(const WarpedModel& model, ScalarField u);

// u == t0; trivially valid in both signatures.
GraphSurface make_slice(const WarpedModel& model, const Grid& grid, double t0);

// u = t0 + amplitude * prod_i sin(mode_i * x_i). Throws PointError (advising
// a smaller amplitude) if the result is not spacelike everywhere.
GraphSurface make_perturbed(const WarpedModel& model, const Grid& grid, double t0,
                            double amplitude, std::span<const double> mode);

}  // namespace warplab
