// AVX2 variants. Compiled with -mavx2 in its own TU; only dispatched to when
// the CPU reports AVX2 support. No FMA is used so results stay bit-identical
// to the scalar reference kernels.

#if defined(__x86_64__) || defined(_M_X64)

#include "warplab/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace warplab::kernels::detail {

namespace {

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_max_pd(lo, hi);
    __m128d sw = _mm_unpackhi_pd(m, m);
    return _mm_cvtsd_f64(_mm_max_sd(m, sw));
}

inline __m256d abs_pd(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    return _mm256_and_pd(v, mask);
}

}  // namespace

void axpby_avx2(double* dst, double a, const double* x, double b,
                const double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    const __m256d bv = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d yv = _mm256_loadu_pd(y + i);
        __m256d r = _mm256_add_pd(_mm256_mul_pd(av, xv), _mm256_mul_pd(bv, yv));
        _mm256_storeu_pd(dst + i, r);
    }
    for (; i < n; ++i) {
        dst[i] = a * x[i] + b * y[i];
    }
}

void diff_scaled_avx2(double* dst, double a, const double* x, const double* y,
                      std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(av, _mm256_sub_pd(xv, yv)));
    }
    for (; i < n; ++i) {
        dst[i] = a * (x[i] - y[i]);
    }
}

void second_diff_scaled_avx2(double* dst, double a, const double* p,
                             const double* c, const double* m, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d pv = _mm256_loadu_pd(p + i);
        __m256d cv = _mm256_loadu_pd(c + i);
        __m256d mv = _mm256_loadu_pd(m + i);
        __m256d r = _mm256_add_pd(_mm256_sub_pd(pv, _mm256_mul_pd(two, cv)), mv);
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(av, r));
    }
    for (; i < n; ++i) {
        dst[i] = a * (p[i] - 2.0 * c[i] + m[i]);
    }
}

void mul_avx2(double* dst, const double* x, const double* y, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) {
        dst[i] = x[i] * y[i];
    }
}

double max_abs_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(x + i)));
    }
    double m = hmax(acc);
    for (; i < n; ++i) {
        double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

double max_abs_diff_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_max_pd(acc, abs_pd(d));
    }
    double m = hmax(acc);
    for (; i < n; ++i) {
        double v = std::fabs(x[i] - y[i]);
        if (v > m) m = v;
    }
    return m;
}

}  // namespace warplab::kernels::detail

#endif  // x86-64
