#pragma once

#include "warplab/field.hpp"

namespace warplab {

// Second-order finite differences along one grid axis. Central stencils in
// the interior; periodic grids wrap, Dirichlet grids switch to one-sided
// second-order stencils on the boundary rows.
//
// order 1:  (f[k+1] - f[k-1]) / (2h),  boundary (-3f0 + 4f1 - f2) / (2h)
// order 2:  (f[k+1] - 2f[k] + f[k-1]) / h^2,
//           boundary (2f0 - 5f1 + 4f2 - f3) / h^2
ScalarField partial_derivative(const ScalarField& field, int axis, int order);

// Hessian entry d2/dxi dxj via composed first derivatives for i != j. The
// two compositions commute up to roundoff; hessian() evaluates each pair
// once, so the stored Hessian is symmetric by construction.
ScalarField mixed_second_derivative(const ScalarField& field, int axis_i, int axis_j);

// All first derivatives (gradient) / all second derivatives (Hessian).
VectorField gradient(const ScalarField& field);
SymTensorField hessian(const ScalarField& field);

}  // namespace warplab
