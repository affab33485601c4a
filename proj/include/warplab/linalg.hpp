#pragma once

// Small dense symmetric-matrix helpers for per-point metric work. Matrices
// are row-major n*n buffers with n the fiber dimension (1..3 in practice).

#include <cstddef>
#include <span>

namespace warplab::linalg {

// In-place lower Cholesky of a symmetric positive definite matrix.
// Returns false (leaving a partial factor) if a pivot is not positive.
bool cholesky(std::span<double> a, int n);

// Determinant from a Cholesky factor: product of squared diagonal entries.
double det_from_cholesky(std::span<const double> chol, int n);

// Inverse of the original matrix from its Cholesky factor.
void invert_from_cholesky(std::span<const double> chol, std::span<double> inv, int n);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
void sym_eigenvalues(std::span<const double> a, std::span<double> eig, int n);

// B = L^{-1} S L^{-T} for symmetric S and lower-triangular L: the
// metric-orthonormalized representative of a g-self-adjoint operator.
void congruence_inv_cholesky(std::span<const double> chol, std::span<const double> s,
                             std::span<double> b, int n);

}  // namespace warplab::linalg
