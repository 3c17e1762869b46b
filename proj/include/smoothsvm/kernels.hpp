#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace smoothsvm::kernels {

/// Data-parallel inner loops shared by the CSR products and the solvers.
/// Every variant uses a fixed summation order, so results are reproducible
/// run to run on the same table; tables differ from each other only by
/// rounding.
struct KernelTable {
  std::string_view name;
  // sum_i a[i] b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = x + beta y
  void (*xpby)(const double* x, double beta, double* y, std::size_t n);
  // y *= alpha
  void (*scale)(double alpha, double* y, std::size_t n);
  // sum_k values[k] dense[cols[k]]
  double (*sparse_dot)(const double* values, const std::uint32_t* cols, std::size_t nnz,
                       const double* dense);
  // dense[cols[k]] += alpha values[k]
  void (*sparse_axpy)(double alpha, const double* values, const std::uint32_t* cols,
                      std::size_t nnz, double* dense);
};

enum class Isa { Scalar, Avx2, Neon };

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

/// Table used by the library. Chosen once from the CPU, overridable with
/// SMOOTHSVM_KERNELS=scalar|avx2|neon or select().
const KernelTable& active() noexcept;

/// Switches the active table; returns false (and changes nothing) when the
/// variant is unavailable.
bool select(Isa isa) noexcept;

}  // namespace smoothsvm::kernels

namespace smoothsvm::vec {

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void scale(double alpha, std::span<double> y);

}  // namespace smoothsvm::vec
