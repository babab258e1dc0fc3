#include "bess/simd/kernels.hpp"

#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

namespace bess::simd {
namespace {

struct KernelTable {
  Isa isa;
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scale)(double, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
};

constexpr KernelTable kScalar{Isa::Scalar, scalar::axpy, scalar::scale, scalar::dot};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::Avx2, avx2::axpy, avx2::scale, avx2::dot};
#endif
#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::Neon, neon::axpy, neon::scale, neon::dot};
#endif

const KernelTable* table_for(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      return &kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::Neon:
      return &kNeon;
#endif
    default:
      return &kScalar;
  }
}

Isa env_or_detected() {
  if (const char* env = std::getenv("BESS_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return detected_isa();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{table_for(env_or_detected())};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

Isa detected_isa() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
  return Isa::Scalar;
#elif defined(__aarch64__)
  return Isa::Neon;
#else
  return Isa::Scalar;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed)->isa; }

Isa select_isa(Isa requested) {
  const Isa host = detected_isa();
  const Isa chosen = (requested == host) ? requested : Isa::Scalar;
  current().store(table_for(chosen), std::memory_order_relaxed);
  return chosen;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  current().load(std::memory_order_relaxed)->axpy(a, x.data(), y.data(), y.size());
}

void scale(double a, std::span<double> x) {
  current().load(std::memory_order_relaxed)->scale(a, x.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return current().load(std::memory_order_relaxed)->dot(x.data(), y.data(), x.size());
}

}  // namespace bess::simd
