// NEON variants for aarch64. Same contract as the AVX2 file: no FMA, results
// bit-identical to the scalar reference kernels.

#if defined(__aarch64__)

#include "warplab/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace warplab::kernels::detail {

void axpby_neon(double* dst, double a, const double* x, double b,
                const double* y, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    const float64x2_t bv = vdupq_n_f64(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t r = vaddq_f64(vmulq_f64(av, vld1q_f64(x + i)),
                                  vmulq_f64(bv, vld1q_f64(y + i)));
        vst1q_f64(dst + i, r);
    }
    for (; i < n; ++i) {
        dst[i] = a * x[i] + b * y[i];
    }
}

void diff_scaled_neon(double* dst, double a, const double* x, const double* y,
                      std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i, vmulq_f64(av, vsubq_f64(vld1q_f64(x + i),
                                                   vld1q_f64(y + i))));
    }
    for (; i < n; ++i) {
        dst[i] = a * (x[i] - y[i]);
    }
}

void second_diff_scaled_neon(double* dst, double a, const double* p,
                             const double* c, const double* m, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    const float64x2_t two = vdupq_n_f64(2.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t r = vaddq_f64(
            vsubq_f64(vld1q_f64(p + i), vmulq_f64(two, vld1q_f64(c + i))),
            vld1q_f64(m + i));
        vst1q_f64(dst + i, vmulq_f64(av, r));
    }
    for (; i < n; ++i) {
        dst[i] = a * (p[i] - 2.0 * c[i] + m[i]);
    }
}

void mul_neon(double* dst, const double* x, const double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(dst + i, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    }
    for (; i < n; ++i) {
        dst[i] = x[i] * y[i];
    }
}

double max_abs_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
    }
    double m = vmaxvq_f64(acc);
    for (; i < n; ++i) {
        double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

double max_abs_diff_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        acc = vmaxq_f64(acc, vabsq_f64(vsubq_f64(vld1q_f64(x + i),
                                                 vld1q_f64(y + i))));
    }
    double m = vmaxvq_f64(acc);
    for (; i < n; ++i) {
        double v = std::fabs(x[i] - y[i]);
        if (v > m) m = v;
    }
    return m;
}

}  // namespace warplab::kernels::detail

#endif  // aarch64
