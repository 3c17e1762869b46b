#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "smoothsvm/errors.hpp"

namespace smoothsvm::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(SMOOTHSVM_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("SMOOTHSVM_KERNELS");
  const std::string_view request = env ? env : "auto";
  if (request == "scalar") return &scalar_table();
  if (request == "avx2") {
    if (const KernelTable* t = table_for(Isa::Avx2)) return t;
    return &scalar_table();
  }
  if (request == "neon") {
    if (const KernelTable* t = table_for(Isa::Neon)) return t;
    return &scalar_table();
  }
  if (const KernelTable* t = table_for(Isa::Avx2)) return t;
  if (const KernelTable* t = table_for(Isa::Neon)) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& active_slot() noexcept {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return &scalar_table();
    case Isa::Avx2:
#if defined(SMOOTHSVM_HAVE_AVX2_TU)
      if (cpu_has_avx2()) return &detail::avx2_table();
#endif
      return nullptr;
    case Isa::Neon:
#if defined(SMOOTHSVM_HAVE_NEON_TU)
      return &detail::neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
  const KernelTable* table = table_for(isa);
  if (!table) return false;
  active_slot().store(table, std::memory_order_release);
  return true;
}

}  // namespace smoothsvm::kernels

namespace smoothsvm::vec {

namespace {

void require_same(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch("vector lengths differ");
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  require_same(a.size(), b.size());
  return kernels::active().dot(a.data(), b.data(), a.size());
}

double norm(std::span<const double> a) {
  return std::sqrt(kernels::active().dot(a.data(), a.data(), a.size()));
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same(x.size(), y.size());
  kernels::active().axpy(alpha, x.data(), y.data(), x.size());
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  require_same(x.size(), y.size());
  kernels::active().xpby(x.data(), beta, y.data(), x.size());
}

void scale(double alpha, std::span<double> y) {
  kernels::active().scale(alpha, y.data(), y.size());
}

}  // namespace smoothsvm::vec
