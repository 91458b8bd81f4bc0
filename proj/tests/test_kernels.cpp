#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "parambar/kernels.hpp"

using namespace parambar;

namespace {

std::vector<double> random_vec(std::mt19937_64& eng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
    return v;
}

}  // namespace

TEST_CASE("scalar kernels match hand computation") {
    const double a[] = {1.0, 2.0, 3.0};
    const double b[] = {4.0, -5.0, 6.0};
    CHECK(kernels::dot_scalar(a, b, 3) == doctest::Approx(1 * 4 - 2 * 5 + 3 * 6).epsilon(1e-15));
    CHECK(kernels::dist2_scalar(a, b, 3) == doctest::Approx(9 + 49 + 9).epsilon(1e-15));
    double y[] = {1.0, 1.0, 1.0};
    kernels::axpy_scalar(y, 2.0, a, 3);
    CHECK(y[0] == 3.0);
    CHECK(y[1] == 5.0);
    CHECK(y[2] == 7.0);
}

TEST_CASE("empty and single-element inputs") {
    const double a[] = {2.5};
    CHECK(kernels::dot_scalar(a, a, 0) == 0.0);
    CHECK(kernels::dist2_scalar(a, a, 1) == 0.0);
    CHECK(kernels::dot(a, a, 1) == doctest::Approx(6.25));
}

TEST_CASE("scalar backend is always available and selectable") {
    CHECK(kernels::available(kernels::Backend::Scalar));
    const kernels::Backend before = kernels::active();
    kernels::select(kernels::Backend::Scalar);
    CHECK(kernels::active() == kernels::Backend::Scalar);
    kernels::select(before);
}

TEST_CASE("simd variants agree with scalar reference") {
    if (!kernels::available(kernels::Backend::Avx2)) {
        MESSAGE("avx2 not available on this machine, equivalence check skipped");
        return;
    }
    std::mt19937_64 eng(42);
    // Odd lengths exercise the unrolled tail handling.
    for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{7}, std::size_t{8},
                          std::size_t{15}, std::size_t{64}, std::size_t{115}, std::size_t{1000}}) {
        const std::vector<double> a = random_vec(eng, n);
        const std::vector<double> b = random_vec(eng, n);
#if defined(PARAMBAR_HAVE_AVX2)
        CHECK(kernels::dot_avx2(a.data(), b.data(), n) ==
              doctest::Approx(kernels::dot_scalar(a.data(), b.data(), n)).epsilon(1e-12));
        CHECK(kernels::dist2_avx2(a.data(), b.data(), n) ==
              doctest::Approx(kernels::dist2_scalar(a.data(), b.data(), n)).epsilon(1e-12));
        std::vector<double> y1 = b;
        std::vector<double> y2 = b;
        kernels::axpy_scalar(y1.data(), 1.5, a.data(), n);
        kernels::axpy_avx2(y2.data(), 1.5, a.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-12));
#endif
    }
}

TEST_CASE("selecting an unavailable backend throws") {
    if (kernels::available(kernels::Backend::Avx2)) return;
    CHECK_THROWS(kernels::select(kernels::Backend::Avx2));
}

TEST_CASE("dispatched results match the reference regardless of backend") {
    std::mt19937_64 eng(7);
    const std::vector<double> a = random_vec(eng, 115);
    const std::vector<double> b = random_vec(eng, 115);
    const double want_dot = kernels::dot_scalar(a.data(), b.data(), a.size());
    const double want_d2 = kernels::dist2_scalar(a.data(), b.data(), a.size());
    CHECK(kernels::dot(a.data(), b.data(), a.size()) == doctest::Approx(want_dot).epsilon(1e-12));
    CHECK(kernels::dist2(a.data(), b.data(), a.size()) == doctest::Approx(want_d2).epsilon(1e-12));
}
