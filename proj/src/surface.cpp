#include "warplab/surface.hpp"

#include <cmath>

#include "warplab/errors.hpp"
#include "warplab/fd.hpp"

namespace warplab {

GraphSurface make_graph(const WarpedModel& model, ScalarField u) {
    u.ensure_finite("graph height");
    GraphSurface s{model, std::move(u), {}, true, std::nullopt};
    const Grid& g = s.u.grid();
    s.validity.assign(g.size(), 1);

    if (model.lorentzian()) {
        VectorField du = gradient(s.u);
        for (std::size_t p = 0; p < g.size(); ++p) {
            double du2 = 0.0;
            for (int a = 0; a < g.dim(); ++a) {
                double d = du.at(a, p);
                du2 += d * d;
            }
            double f = model.warp.f(s.u[p]);
            if (!(du2 < f * f)) {
                s.validity[p] = 0;
                s.all_valid = false;
                if (!s.first_invalid) s.first_invalid = p;
            }
        }
    }
    return s;
}

GraphSurface make_slice(const WarpedModel& model, const Grid& grid, double t0) {
    return make_graph(model, ScalarField(grid, t0));
}

GraphSurface make_perturbed(const WarpedModel& model, const Grid& grid, double t0,
                            double amplitude, std::span<const double> mode) {
    if (static_cast<int>(mode.size()) != grid.dim()) {
        throw std::invalid_argument("make_perturbed: mode arity must match grid dimension");
    }
    ScalarField u = ScalarField::from_function(grid, [&](std::span<const double> x) {
        double w = amplitude;
        for (std::size_t a = 0; a < mode.size(); ++a) {
            w *= std::sin(mode[a] * x[a]);
        }
        return t0 + w;
    });
    GraphSurface s = make_graph(model, std::move(u));
    if (!s.all_valid) {
        throw PointError(
            "make_perturbed: surface leaves the spacelike cone at " +
                format_point(grid.unflatten(*s.first_invalid)) +
                "; reduce the amplitude",
            grid.unflatten(*s.first_invalid));
    }
    return s;
}

}  // namespace warplab
