#include "parambar/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace parambar::kernels {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double dist2_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

namespace {

struct DispatchTable {
    double (*dot)(const double*, const double*, std::size_t);
    double (*dist2)(const double*, const double*, std::size_t);
    void (*axpy)(double*, double, const double*, std::size_t);
    Backend backend;
};

constexpr DispatchTable kScalarTable{dot_scalar, dist2_scalar, axpy_scalar,
                                     Backend::Scalar};

#if defined(PARAMBAR_HAVE_AVX2)
constexpr DispatchTable kAvx2Table{dot_avx2, dist2_avx2, axpy_avx2, Backend::Avx2};
#endif

bool cpu_has_avx2() {
#if defined(PARAMBAR_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

DispatchTable detect() {
    if (const char* env = std::getenv("PARAMBAR_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return kScalarTable;
#if defined(PARAMBAR_HAVE_AVX2)
        if (want == "avx2" && cpu_has_avx2()) return kAvx2Table;
#endif
    }
#if defined(PARAMBAR_HAVE_AVX2)
    if (cpu_has_avx2()) return kAvx2Table;
#endif
    return kScalarTable;
}

DispatchTable& table() {
    static DispatchTable t = detect();
    return t;
}

}  // namespace

bool available(Backend b) {
    switch (b) {
    case Backend::Scalar: return true;
    case Backend::Avx2: return cpu_has_avx2();
    }
    return false;
}

Backend active() { return table().backend; }

void select(Backend b) {
    if (!available(b)) throw std::invalid_argument("kernel backend unavailable: " + name(b));
    switch (b) {
    case Backend::Scalar: table() = kScalarTable; break;
    case Backend::Avx2:
#if defined(PARAMBAR_HAVE_AVX2)
        table() = kAvx2Table;
#endif
        break;
    }
}

std::string name(Backend b) {
    switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

double dot(const double* a, const double* b, std::size_t n) { return table().dot(a, b, n); }
double dist2(const double* a, const double* b, std::size_t n) { return table().dist2(a, b, n); }
void axpy(double* y, double a, const double* x, std::size_t n) { table().axpy(y, a, x, n); }

}  // namespace parambar::kernels
