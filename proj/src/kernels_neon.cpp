#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace smoothsvm::kernels::detail {

namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  const float64x2_t acc = vaddq_f64(acc0, acc1);
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpby_neon(const double* x, double beta, double* y, std::size_t n) {
  const float64x2_t vb = vdupq_n_f64(beta);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(x + i), vb, vld1q_f64(y + i)));
  for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void scale_neon(double alpha, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vmulq_f64(va, vld1q_f64(y + i)));
  for (; i < n; ++i) y[i] *= alpha;
}

double sparse_dot_neon(const double* values, const std::uint32_t* cols, std::size_t nnz,
                       const double* dense) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= nnz; k += 2) {
    const double gathered[2] = {dense[cols[k]], dense[cols[k + 1]]};
    acc = vfmaq_f64(acc, vld1q_f64(values + k), vld1q_f64(gathered));
  }
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; k < nnz; ++k) sum += values[k] * dense[cols[k]];
  return sum;
}

void sparse_axpy_neon(double alpha, const double* values, const std::uint32_t* cols,
                      std::size_t nnz, double* dense) {
  for (std::size_t k = 0; k < nnz; ++k) dense[cols[k]] += alpha * values[k];
}

constexpr KernelTable kNeon{
    "neon", dot_neon, axpy_neon, xpby_neon, scale_neon, sparse_dot_neon, sparse_axpy_neon,
};

}  // namespace

const KernelTable& neon_table() noexcept { return kNeon; }

}  // namespace smoothsvm::kernels::detail
