#include "warplab/linalg.hpp"

#include <cmath>
#include <vector>

namespace warplab::linalg {

bool cholesky(std::span<double> a, int n) {
    for (int j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0)) return false;
        double ljj = std::sqrt(d);
        a[j * n + j] = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / ljj;
        }
        for (int i = 0; i < j; ++i) a[i * n + j] = 0.0;
    }
    return true;
}

double det_from_cholesky(std::span<const double> chol, int n) {
    double d = 1.0;
    for (int i = 0; i < n; ++i) {
        double l = chol[i * n + i];
        d *= l * l;
    }
    return d;
}

namespace {

// Solve L x = b in place for lower-triangular L.
void forward_solve(std::span<const double> l, std::span<double> x, int n) {
    for (int i = 0; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
        x[i] = s / l[i * n + i];
    }
}

// Solve L^T x = b in place.
void backward_solve(std::span<const double> l, std::span<double> x, int n) {
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= l[k * n + i] * x[k];
        x[i] = s / l[i * n + i];
    }
}

}  // namespace

void invert_from_cholesky(std::span<const double> chol, std::span<double> inv, int n) {
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = (i == j) ? 1.0 : 0.0;
        forward_solve(chol, col, n);
        backward_solve(chol, col, n);
        for (int i = 0; i < n; ++i) inv[i * n + j] = col[static_cast<std::size_t>(i)];
    }
}

void sym_eigenvalues(std::span<const double> a, std::span<double> eig, int n) {
    if (n == 1) {
        eig[0] = a[0];
        return;
    }
    std::vector<double> m(a.begin(), a.end());
    const int max_sweeps = 32;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) off += std::fabs(m[i * n + j]);
        }
        if (off < 1e-300) break;
        double scale = 0.0;
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(m[i * n + i]));
        if (off <= 1e-15 * std::max(scale, 1e-300)) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = m[p * n + q];
                if (apq == 0.0) continue;
                double app = m[p * n + p];
                double aqq = m[q * n + q];
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double mkp = m[k * n + p];
                    double mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    double mpk = m[p * n + k];
                    double mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) eig[i] = m[i * n + i];
    // insertion sort, ascending
    for (int i = 1; i < n; ++i) {
        double v = eig[i];
        int j = i - 1;
        while (j >= 0 && eig[j] > v) {
            eig[j + 1] = eig[j];
            --j;
        }
        eig[j + 1] = v;
    }
}

void congruence_inv_cholesky(std::span<const double> chol, std::span<const double> s,
                             std::span<double> b, int n) {
    // Columns of S, solve L X = S, then B = transpose-solve of X^T.
    std::vector<double> x(static_cast<std::size_t>(n) * n);
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = s[i * n + j];
        forward_solve(chol, col, n);
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i) * n + j] = col[static_cast<std::size_t>(i)];
    }
    // B = (L^{-1} (L^{-1} S)^T)^T; since L^{-1}S is x, compute rows.
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(i) * n + k];
        forward_solve(chol, col, n);
        for (int k = 0; k < n; ++k) b[i * n + k] = col[static_cast<std::size_t>(k)];
    }
}

}  // namespace warplab::linalg
