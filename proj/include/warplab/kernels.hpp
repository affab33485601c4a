#pragma once
// Data-parallel inner loops used by the field and stencil machinery.
//
// Every kernel has a scalar reference implementation and, where the host
// supports it, a SIMD variant (AVX2 on x86-64, NEON on aarch64) selected at
// runtime. Elementwise kernels are bit-identical across backends (the build
// disables FP contraction); max reductions are exact and therefore also
// bit-identical. Equivalence is enforced by tests/test_kernels.

#include <cstddef>
#include <vector>

namespace warplab::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);

// Backends the current host can actually run.
std::vector<Isa> supported_isas();

// Backend in use. Defaults to the widest supported one; the environment
// variable WARPLAB_ISA=scalar|avx2|neon overrides at startup.
Isa active_isa();

// Test hook. Throws std::invalid_argument if the host lacks the ISA.
void force_isa(Isa isa);

// dst[i] = a*x[i] + b*y[i]
void axpby(double* dst, double a, const double* x, double b, const double* y,
           std::size_t n);

// dst[i] = a*(x[i] - y[i])
void diff_scaled(double* dst, double a, const double* x, const double* y,
                 std::size_t n);

// dst[i] = a*(p[i] - 2*c[i] + m[i])
void second_diff_scaled(double* dst, double a, const double* p,
                        const double* c, const double* m, std::size_t n);

// dst[i] = x[i] * y[i]
void mul(double* dst, const double* x, const double* y, std::size_t n);

double max_abs(const double* x, std::size_t n);

double max_abs_diff(const double* x, const double* y, std::size_t n);

// Per-backend entry points, exposed so the equivalence tests can pin a
// specific implementation regardless of the active backend.
struct Backend {
    void (*axpby)(double*, double, const double*, double, const double*, std::size_t);
    void (*diff_scaled)(double*, double, const double*, const double*, std::size_t);
    void (*second_diff_scaled)(double*, double, const double*, const double*, const double*, std::size_t);
    void (*mul)(double*, const double*, const double*, std::size_t);
    double (*max_abs)(const double*, std::size_t);
    double (*max_abs_diff)(const double*, const double*, std::size_t);
};

const Backend& backend(Isa isa);

}  // namespace warplab::kernels
