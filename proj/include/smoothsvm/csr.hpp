#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace smoothsvm {

/// Compressed sparse row matrix (one instance per row). Immutable once
/// built; the constructor rejects malformed structure, including duplicate
/// or unsorted column indices within a row.
class CsrMatrix {
 public:
  struct Row {
    std::span<const std::uint32_t> cols;
    std::span<const double> values;
  };

  CsrMatrix() = default;
  CsrMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> row_offsets,
            std::vector<std::uint32_t> col_indices, std::vector<double> values);

  /// Row-major dense input; exact zeros are not stored.
  static CsrMatrix from_dense(std::size_t n_rows, std::size_t n_cols,
                              std::span<const double> row_major);

  std::size_t rows() const noexcept { return n_rows_; }
  std::size_t cols() const noexcept { return n_cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  Row row(std::size_t i) const noexcept {
    const std::size_t begin = row_offsets_[i];
    const std::size_t len = row_offsets_[i + 1] - begin;
    return {{col_indices_.data() + begin, len}, {values_.data() + begin, len}};
  }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::uint32_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Rows `indices` in the given order, same column count.
  CsrMatrix select_rows(std::span<const std::size_t> indices) const;

  std::vector<double> to_dense() const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::uint32_t> col_indices_;
  std::vector<double> values_;
};

/// out = X s. Throws DimensionMismatch.
void matvec(const CsrMatrix& m, std::span<const double> s, std::span<double> out);
std::vector<double> matvec(const CsrMatrix& m, std::span<const double> s);

/// out = X^T u, accumulated in row order.
void transpose_matvec(const CsrMatrix& m, std::span<const double> u, std::span<double> out);
std::vector<double> transpose_matvec(const CsrMatrix& m, std::span<const double> u);

/// Matrix-free lambda I + (1/n) X^T D X. Holds a reference to the matrix,
/// which must outlive it. `apply` reuses an internal buffer, so one
/// operator must not be shared across threads.
class HessianOperator {
 public:
  HessianOperator(double lambda, const CsrMatrix& matrix, std::vector<double> diag);

  double lambda() const noexcept { return lambda_; }
  const CsrMatrix& matrix() const noexcept { return *matrix_; }
  std::span<const double> diag() const noexcept { return diag_; }

  /// out = lambda s + (1/n) X^T (D (X s)).
  void apply(std::span<const double> s, std::span<double> out) const;

  /// s^T H s from a precomputed X s.
  double quadratic_form(std::span<const double> s, std::span<const double> xs) const;

 private:
  double lambda_;
  const CsrMatrix* matrix_;
  std::vector<double> diag_;
  mutable std::vector<double> scratch_;
};

std::vector<double> hessian_vector_product(const HessianOperator& op, std::span<const double> s);

}  // namespace smoothsvm
