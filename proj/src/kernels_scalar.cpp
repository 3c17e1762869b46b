#include "smoothsvm/kernels.hpp"

namespace smoothsvm::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby_scalar(const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void scale_scalar(double alpha, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= alpha;
}

double sparse_dot_scalar(const double* values, const std::uint32_t* cols, std::size_t nnz,
                         const double* dense) {
  double sum = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) sum += values[k] * dense[cols[k]];
  return sum;
}

void sparse_axpy_scalar(double alpha, const double* values, const std::uint32_t* cols,
                        std::size_t nnz, double* dense) {
  for (std::size_t k = 0; k < nnz; ++k) dense[cols[k]] += alpha * values[k];
}

constexpr KernelTable kScalar{
    "scalar", dot_scalar, axpy_scalar, xpby_scalar, scale_scalar, sparse_dot_scalar,
    sparse_axpy_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace smoothsvm::kernels
