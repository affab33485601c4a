#include "warplab/oracle.hpp"

#include <cmath>
#include <vector>

#include "warplab/errors.hpp"
#include "warplab/fd.hpp"
#include "warplab/linalg.hpp"

namespace warplab {

ScalarField laplace_beltrami_oracle(const SymTensorField& metric, const ScalarField& phi) {
    require_same_grid(metric.grid(), phi.grid(), "laplace_beltrami_oracle");
    const Grid& g = phi.grid();
    const int n = g.dim();
    const std::size_t npts = g.size();

    // Per-point Cholesky: positive-definiteness check, sqrt(det), inverse.
    ScalarField sqrt_det(g);
    std::vector<ScalarField> ginv;  // packed upper triangle, same order as metric
    ginv.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (int c = 0; c < n * (n + 1) / 2; ++c) ginv.emplace_back(g);

    std::vector<double> m(static_cast<std::size_t>(n) * n);
    std::vector<double> inv(static_cast<std::size_t>(n) * n);
    for (std::size_t p = 0; p < npts; ++p) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                m[static_cast<std::size_t>(i) * n + j] = metric.at_ij(i, j, p);
            }
        }
        if (!linalg::cholesky(m, n)) {
            throw PointError("laplace_beltrami_oracle: metric not positive definite at " +
                                 format_point(g.unflatten(p)),
                             g.unflatten(p));
        }
        sqrt_det[p] = std::sqrt(linalg::det_from_cholesky(m, n));
        linalg::invert_from_cholesky(m, inv, n);
        int c = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                ginv[static_cast<std::size_t>(c)][p] = inv[static_cast<std::size_t>(i) * n + j];
                ++c;
            }
        }
    }

    // Contravariant flux F^i = sqrt(det g) g^{ij} d_j phi.
    std::vector<ScalarField> dphi;
    dphi.reserve(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) dphi.push_back(partial_derivative(phi, a, 1));

    ScalarField result(g);
    SymTensorField dummy(g);  // pack index helper
    for (int i = 0; i < n; ++i) {
        ScalarField flux(g);
        for (int j = 0; j < n; ++j) {
            int c = dummy.pack(i, j);
            const ScalarField& gij = ginv[static_cast<std::size_t>(c)];
            for (std::size_t p = 0; p < npts; ++p) {
                flux[p] += gij[p] * dphi[static_cast<std::size_t>(j)][p];
            }
        }
        for (std::size_t p = 0; p < npts; ++p) flux[p] *= sqrt_det[p];
        ScalarField div_i = partial_derivative(flux, i, 1);
        for (std::size_t p = 0; p < npts; ++p) result[p] += div_i[p];
    }
    for (std::size_t p = 0; p < npts; ++p) result[p] /= sqrt_det[p];

    result.ensure_finite("laplace_beltrami_oracle");
    return result;
}

}  // namespace warplab
