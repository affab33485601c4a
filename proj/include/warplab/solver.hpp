#pragma once

#include <string>
#include <vector>

#include "warplab/bundle.hpp"
#include "warplab/surface.hpp"

namespace warplab {

// Prescribed-mean-curvature Dirichlet problem H[u] = H_target. The residual
// is measured in the sup norm over interior points; boundary samples are
// taken verbatim from boundary_data.
struct SolveConfig {
    double H_target;
    ScalarField boundary_data;  // full-grid field; only boundary rows are read
    int max_iters = 25;
    double newton_tol = 1e-10;
    double damping = 1.0;

    SolveConfig(double target, ScalarField boundary)
        : H_target(target), boundary_data(std::move(boundary)) {
        validate();
    }
    void validate() const;
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    double initial_residual = 0.0;
    std::vector<double> damping_history;  // accepted damping per Newton step
    std::vector<int> inner_history;       // inner linear iterations per step
    std::string message;
};

// Damped Newton with finite-difference Jacobian-vector products (matrix
// free) and a stationary damped-Jacobi inner solver whose diagonal is probed
// by stencil coloring. Every accepted iterate is spacelike/valid; the line
// search halves the damping on residual increase down to 2^-10, then aborts.
//
// Throws SolveError on non-convergence (carrying the final residual) and
// when no damping keeps the iterate inside the spacelike cone ("left the
// spacelike cone").
GraphSurface solve_cmc(const WarpedModel& model, const Grid& grid,
                       const SolveConfig& cfg, SolveReport* report = nullptr);

// Harmonic extension of the boundary data by the flat Laplacian: the
// solver's initial guess, exposed for tests.
ScalarField harmonic_extension(const Grid& grid, const ScalarField& boundary_data);

}  // namespace warplab
