#include "warplab/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace warplab::kernels {

namespace detail {

void axpby_scalar(double*, double, const double*, double, const double*, std::size_t);
void diff_scaled_scalar(double*, double, const double*, const double*, std::size_t);
void second_diff_scaled_scalar(double*, double, const double*, const double*, const double*, std::size_t);
void mul_scalar(double*, const double*, const double*, std::size_t);
double max_abs_scalar(const double*, std::size_t);
double max_abs_diff_scalar(const double*, const double*, std::size_t);

#if defined(__x86_64__) || defined(_M_X64)
void axpby_avx2(double*, double, const double*, double, const double*, std::size_t);
void diff_scaled_avx2(double*, double, const double*, const double*, std::size_t);
void second_diff_scaled_avx2(double*, double, const double*, const double*, const double*, std::size_t);
void mul_avx2(double*, const double*, const double*, std::size_t);
double max_abs_avx2(const double*, std::size_t);
double max_abs_diff_avx2(const double*, const double*, std::size_t);
#endif

#if defined(__aarch64__)
void axpby_neon(double*, double, const double*, double, const double*, std::size_t);
void diff_scaled_neon(double*, double, const double*, const double*, std::size_t);
void second_diff_scaled_neon(double*, double, const double*, const double*, const double*, std::size_t);
void mul_neon(double*, const double*, const double*, std::size_t);
double max_abs_neon(const double*, std::size_t);
double max_abs_diff_neon(const double*, const double*, std::size_t);
#endif

}  // namespace detail

namespace {

const Backend kScalarBackend = {
    detail::axpby_scalar,     detail::diff_scaled_scalar,
    detail::second_diff_scaled_scalar, detail::mul_scalar,
    detail::max_abs_scalar,   detail::max_abs_diff_scalar,
};

#if defined(__x86_64__) || defined(_M_X64)
const Backend kAvx2Backend = {
    detail::axpby_avx2,     detail::diff_scaled_avx2,
    detail::second_diff_scaled_avx2, detail::mul_avx2,
    detail::max_abs_avx2,   detail::max_abs_diff_avx2,
};
#endif

#if defined(__aarch64__)
const Backend kNeonBackend = {
    detail::axpby_neon,     detail::diff_scaled_neon,
    detail::second_diff_scaled_neon, detail::mul_neon,
    detail::max_abs_neon,   detail::max_abs_diff_neon,
};
#endif

bool isa_supported(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return true;
        case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            return __builtin_cpu_supports("avx2") != 0;
#else
            return false;
#endif
        case Isa::Neon:
#if defined(__aarch64__)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa initial_isa() {
    if (const char* env = std::getenv("WARPLAB_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        if (std::strcmp(env, "avx2") == 0 && isa_supported(Isa::Avx2)) return Isa::Avx2;
        if (std::strcmp(env, "neon") == 0 && isa_supported(Isa::Neon)) return Isa::Neon;
    }
    if (isa_supported(Isa::Avx2)) return Isa::Avx2;
    if (isa_supported(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

Isa g_active = initial_isa();

}  // namespace

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
        case Isa::Neon: return "neon";
    }
    return "?";
}

std::vector<Isa> supported_isas() {
    std::vector<Isa> out{Isa::Scalar};
    if (isa_supported(Isa::Avx2)) out.push_back(Isa::Avx2);
    if (isa_supported(Isa::Neon)) out.push_back(Isa::Neon);
    return out;
}

Isa active_isa() { return g_active; }

void force_isa(Isa isa) {
    if (!isa_supported(isa)) {
        throw std::invalid_argument(std::string("kernel ISA not supported on this host: ") +
                                    isa_name(isa));
    }
    g_active = isa;
}

const Backend& backend(Isa isa) {
    switch (isa) {
        case Isa::Scalar:
            return kScalarBackend;
        case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (isa_supported(Isa::Avx2)) return kAvx2Backend;
#endif
            break;
        case Isa::Neon:
#if defined(__aarch64__)
            return kNeonBackend;
#endif
            break;
    }
    throw std::invalid_argument(std::string("kernel ISA not supported on this host: ") +
                                isa_name(isa));
}

void axpby(double* dst, double a, const double* x, double b, const double* y,
           std::size_t n) {
    backend(g_active).axpby(dst, a, x, b, y, n);
}

void diff_scaled(double* dst, double a, const double* x, const double* y,
                 std::size_t n) {
    backend(g_active).diff_scaled(dst, a, x, y, n);
}

void second_diff_scaled(double* dst, double a, const double* p, const double* c,
                        const double* m, std::size_t n) {
    backend(g_active).second_diff_scaled(dst, a, p, c, m, n);
}

void mul(double* dst, const double* x, const double* y, std::size_t n) {
    backend(g_active).mul(dst, x, y, n);
}

double max_abs(const double* x, std::size_t n) {
    return backend(g_active).max_abs(x, n);
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
    return backend(g_active).max_abs_diff(x, y, n);
}

}  // namespace warplab::kernels
