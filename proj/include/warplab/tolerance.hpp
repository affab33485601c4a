#pragma once

#include "warplab/grid.hpp"

namespace warplab {

// Grid-resolution tolerance, C * h_max^2. Every oracle-vs-formula comparison
// is second-order accurate, so this is the natural pass band; C is calibrated
// by the convergence studies in the test suite.
inline constexpr double kDefaultTolCoeff = 10.0;

inline double grid_tol(const Grid& grid, double coeff = kDefaultTolCoeff) {
    double h = grid.max_spacing();
    return coeff * h * h;
}

// Admission band for "constant mean curvature": solver residuals sit well
// below discretization error, so a multiple of the grid tolerance is used.
inline double cmc_tol(const Grid& grid, double coeff = kDefaultTolCoeff) {
    return 10.0 * grid_tol(grid, coeff);
}

}  // namespace warplab
