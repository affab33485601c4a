// Scalar/SIMD kernel equivalence. Elementwise kernels must agree bit for bit
// across backends (the build disables FP contraction); max reductions are
// exact and must agree too. Sizes straddle vector-width boundaries so the
// remainder loops are exercised.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "warplab/fd.hpp"
#include "warplab/kernels.hpp"

using namespace warplab;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("every supported backend matches the scalar reference bitwise") {
    std::mt19937_64 rng(12345);
    const auto& ref = kernels::backend(kernels::Isa::Scalar);

    for (kernels::Isa isa : kernels::supported_isas()) {
        const auto& bk = kernels::backend(isa);
        CAPTURE(kernels::isa_name(isa));

        for (std::size_t n : {0, 1, 3, 4, 5, 8, 17, 64, 67, 1000}) {
            auto x = random_vec(rng, n);
            auto y = random_vec(rng, n);
            auto z = random_vec(rng, n);
            std::vector<double> got(n), want(n);

            ref.axpby(want.data(), 1.5, x.data(), -2.25, y.data(), n);
            bk.axpby(got.data(), 1.5, x.data(), -2.25, y.data(), n);
            CHECK(bitwise_equal(got, want));

            ref.diff_scaled(want.data(), 3.7, x.data(), y.data(), n);
            bk.diff_scaled(got.data(), 3.7, x.data(), y.data(), n);
            CHECK(bitwise_equal(got, want));

            ref.second_diff_scaled(want.data(), 0.31, x.data(), y.data(), z.data(), n);
            bk.second_diff_scaled(got.data(), 0.31, x.data(), y.data(), z.data(), n);
            CHECK(bitwise_equal(got, want));

            ref.mul(want.data(), x.data(), y.data(), n);
            bk.mul(got.data(), x.data(), y.data(), n);
            CHECK(bitwise_equal(got, want));

            CHECK(bk.max_abs(x.data(), n) == ref.max_abs(x.data(), n));
            CHECK(bk.max_abs_diff(x.data(), y.data(), n) ==
                  ref.max_abs_diff(x.data(), y.data(), n));
        }
    }
}

TEST_CASE("kernels compute what they claim") {
    std::mt19937_64 rng(99);
    const std::size_t n = 103;
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    std::vector<double> out(n);

    kernels::axpby(out.data(), 2.0, x.data(), -1.0, y.data(), n);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        m = std::max(m, std::fabs(out[i] - (2.0 * x[i] - y[i])));
    }
    CHECK(m == 0.0);

    double want = 0.0;
    for (std::size_t i = 0; i < n; ++i) want = std::max(want, std::fabs(x[i]));
    CHECK(kernels::max_abs(x.data(), n) == want);
}

TEST_CASE("stencil results are backend-independent bit for bit") {
    // The FD layer rides on the kernels; a derivative computed under each
    // supported backend must agree exactly.
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Grid g({19, 23}, {0.11, 0.07}, Boundary::Periodic);
    std::vector<double> vals(g.size());
    for (auto& v : vals) v = dist(rng);
    ScalarField f(g, std::move(vals));

    kernels::Isa prev = kernels::active_isa();
    kernels::force_isa(kernels::Isa::Scalar);
    ScalarField d0_ref = partial_derivative(f, 0, 1);
    ScalarField d1_ref = partial_derivative(f, 1, 2);
    for (kernels::Isa isa : kernels::supported_isas()) {
        kernels::force_isa(isa);
        CAPTURE(kernels::isa_name(isa));
        CHECK(std::memcmp(partial_derivative(f, 0, 1).data(), d0_ref.data(),
                          g.size() * sizeof(double)) == 0);
        CHECK(std::memcmp(partial_derivative(f, 1, 2).data(), d1_ref.data(),
                          g.size() * sizeof(double)) == 0);
    }
    kernels::force_isa(prev);
}

TEST_CASE("force_isa rejects unsupported backends") {
    kernels::Isa prev = kernels::active_isa();
#if defined(__x86_64__)
    CHECK_THROWS_AS(kernels::force_isa(kernels::Isa::Neon), std::invalid_argument);
#else
    CHECK_THROWS_AS(kernels::force_isa(kernels::Isa::Avx2), std::invalid_argument);
#endif
    kernels::force_isa(kernels::Isa::Scalar);
    CHECK(kernels::active_isa() == kernels::Isa::Scalar);
    kernels::force_isa(prev);
}
