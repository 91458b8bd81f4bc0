#pragma once

#include <cstddef>
#include <string>

// Scalar reference kernels for the arithmetic inner loops (pairwise
// distances, covariance accumulation, projection), with AVX2 variants
// selected at runtime on x86-64. The scalar path is the semantic
// reference; SIMD variants are equivalence-tested against it.

namespace parambar::kernels {

enum class Backend { Scalar, Avx2 };

bool available(Backend b);
Backend active();
// Switches the dispatch table; throws std::invalid_argument if the backend
// is not available on this machine.
void select(Backend b);
std::string name(Backend b);

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
double dist2(const double* a, const double* b, std::size_t n);
void axpy(double* y, double a, const double* x, std::size_t n);

// Reference implementations, callable directly (equivalence tests).
double dot_scalar(const double* a, const double* b, std::size_t n);
double dist2_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double* y, double a, const double* x, std::size_t n);

#if defined(PARAMBAR_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
double dist2_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double* y, double a, const double* x, std::size_t n);
#endif

}  // namespace parambar::kernels
