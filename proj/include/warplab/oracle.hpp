#pragma once

#include "warplab/field.hpp"

namespace warplab {

// Independent discrete Laplace-Beltrami operator,
//
//   (1 / sqrt(det g)) d_i ( sqrt(det g) g^{ij} d_j phi ),
//
// computed purely by finite differences from the metric samples. No
// closed-form Laplacian enters anywhere; this is the oracle the geometric
// identity evaluators are checked against.
//
// Throws PointError naming the first grid point where the metric is not
// positive definite.
ScalarField laplace_beltrami_oracle(const SymTensorField& metric, const ScalarField& phi);

}  // namespace warplab
