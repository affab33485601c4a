#include "warplab/kernels.hpp"

#include <cmath>

namespace warplab::kernels::detail {

void axpby_scalar(double* dst, double a, const double* x, double b,
                  const double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = a * x[i] + b * y[i];
    }
}

void diff_scaled_scalar(double* dst, double a, const double* x,
                        const double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = a * (x[i] - y[i]);
    }
}

void second_diff_scaled_scalar(double* dst, double a, const double* p,
                               const double* c, const double* m,
                               std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = a * (p[i] - 2.0 * c[i] + m[i]);
    }
}

void mul_scalar(double* dst, const double* x, const double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[i] = x[i] * y[i];
    }
}

double max_abs_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::fabs(x[i] - y[i]);
        if (v > m) m = v;
    }
    return m;
}

}  // namespace warplab::kernels::detail
