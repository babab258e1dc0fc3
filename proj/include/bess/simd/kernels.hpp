#pragma once

// Dense double-precision vector kernels behind the simplex tableau updates.
// Each kernel has a scalar reference implementation and vectorized variants;
// the variant is chosen once at runtime from CPU features. Set
// BESS_SIMD=scalar in the environment to pin the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace bess::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

// ISA currently used by the dispatching entry points below.
Isa active_isa();

// Best ISA the host supports, ignoring the environment override.
Isa detected_isa();

// Overrides the dispatch target. Requesting an ISA the host lacks falls back
// to Scalar. Returns the ISA actually selected.
Isa select_isa(Isa requested);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

// x *= a
void scale(double a, std::span<double> x);

double dot(std::span<const double> x, std::span<const double> y);

// Fixed-ISA entry points, for equivalence testing.
namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace bess::simd
