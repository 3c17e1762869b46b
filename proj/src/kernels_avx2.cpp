// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace smoothsvm::kernels::detail {

namespace {

// Lane order of the final reduction is fixed: ((l0 + l1) + (l2 + l3)).
inline double reduce(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d lo_sum = _mm_add_sd(lo, _mm_unpackhi_pd(lo, lo));
  const __m128d hi_sum = _mm_add_sd(hi, _mm_unpackhi_pd(hi, hi));
  return _mm_cvtsd_f64(_mm_add_sd(lo_sum, hi_sum));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = reduce(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpby_avx2(const double* x, double beta, double* y, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void scale_avx2(double alpha, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] *= alpha;
}

// Column indices are < 2^31 (CsrMatrix guarantees it), so the signed gather is safe.
double sparse_dot_avx2(const double* values, const std::uint32_t* cols, std::size_t nnz,
                       const double* dense) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= nnz; k += 8) {
    const __m128i idx0 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
    const __m128i idx1 = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k + 4));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k), _mm256_i32gather_pd(dense, idx0, 8), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k + 4), _mm256_i32gather_pd(dense, idx1, 8),
                           acc1);
  }
  for (; k + 4 <= nnz; k += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(values + k), _mm256_i32gather_pd(dense, idx, 8), acc0);
  }
  double sum = reduce(_mm256_add_pd(acc0, acc1));
  for (; k < nnz; ++k) sum += values[k] * dense[cols[k]];
  return sum;
}

// No scatter in AVX2: products are formed four at a time, stores stay scalar.
void sparse_axpy_avx2(double alpha, const double* values, const std::uint32_t* cols,
                      std::size_t nnz, double* dense) {
  const __m256d va = _mm256_set1_pd(alpha);
  alignas(32) double prod[4];
  std::size_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    _mm256_store_pd(prod, _mm256_mul_pd(va, _mm256_loadu_pd(values + k)));
    dense[cols[k]] += prod[0];
    dense[cols[k + 1]] += prod[1];
    dense[cols[k + 2]] += prod[2];
    dense[cols[k + 3]] += prod[3];
  }
  for (; k < nnz; ++k) dense[cols[k]] += alpha * values[k];
}

constexpr KernelTable kAvx2{
    "avx2", dot_avx2, axpy_avx2, xpby_avx2, scale_avx2, sparse_dot_avx2, sparse_axpy_avx2,
};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2; }

}  // namespace smoothsvm::kernels::detail
