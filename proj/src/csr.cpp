#include "smoothsvm/csr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/kernels.hpp"

namespace smoothsvm {

CsrMatrix::CsrMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> row_offsets,
                     std::vector<std::uint32_t> col_indices, std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  if (n_cols_ > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw InvalidArgument("column count exceeds 2^31 - 1");
  }
  if (row_offsets_.size() != n_rows_ + 1 || row_offsets_.front() != 0) {
    throw InvalidArgument("row_offsets must have n_rows + 1 entries starting at 0");
  }
  if (col_indices_.size() != values_.size() || row_offsets_.back() != values_.size()) {
    throw InvalidArgument("last row offset must equal the number of stored values");
  }
  for (std::size_t i = 0; i < n_rows_; ++i) {
    const std::size_t begin = row_offsets_[i];
    const std::size_t end = row_offsets_[i + 1];
    if (end < begin) throw InvalidArgument("row_offsets must be nondecreasing");
    for (std::size_t k = begin; k < end; ++k) {
      if (col_indices_[k] >= n_cols_) {
        throw InvalidArgument("column index out of range in row " + std::to_string(i));
      }
      if (k > begin && col_indices_[k] <= col_indices_[k - 1]) {
        throw InvalidArgument("column indices must be strictly increasing in row " +
                              std::to_string(i));
      }
      if (!std::isfinite(values_[k])) {
        throw InvalidArgument("non-finite value in row " + std::to_string(i));
      }
    }
  }
}

CsrMatrix CsrMatrix::from_dense(std::size_t n_rows, std::size_t n_cols,
                                std::span<const double> row_major) {
  if (row_major.size() != n_rows * n_cols) throw DimensionMismatch("dense size mismatch");
  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> values;
  for (std::size_t i = 0; i < n_rows; ++i) {
    for (std::size_t j = 0; j < n_cols; ++j) {
      const double x = row_major[i * n_cols + j];
      if (x != 0.0) {
        cols.push_back(static_cast<std::uint32_t>(j));
        values.push_back(x);
      }
    }
    offsets.push_back(values.size());
  }
  return CsrMatrix(n_rows, n_cols, std::move(offsets), std::move(cols), std::move(values));
}

CsrMatrix CsrMatrix::select_rows(std::span<const std::size_t> indices) const {
  std::vector<std::size_t> offsets{0};
  offsets.reserve(indices.size() + 1);
  std::vector<std::uint32_t> cols;
  std::vector<double> values;
  for (std::size_t i : indices) {
    if (i >= n_rows_) throw InvalidArgument("row index out of range");
    const Row r = row(i);
    cols.insert(cols.end(), r.cols.begin(), r.cols.end());
    values.insert(values.end(), r.values.begin(), r.values.end());
    offsets.push_back(values.size());
  }
  return CsrMatrix(indices.size(), n_cols_, std::move(offsets), std::move(cols),
                   std::move(values));
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> dense(n_rows_ * n_cols_, 0.0);
  for (std::size_t i = 0; i < n_rows_; ++i) {
    const Row r = row(i);
    for (std::size_t k = 0; k < r.cols.size(); ++k) dense[i * n_cols_ + r.cols[k]] = r.values[k];
  }
  return dense;
}

void matvec(const CsrMatrix& m, std::span<const double> s, std::span<double> out) {
  if (s.size() != m.cols() || out.size() != m.rows()) {
    throw DimensionMismatch("matvec: expected s of length " + std::to_string(m.cols()));
  }
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const CsrMatrix::Row r = m.row(i);
    out[i] = k.sparse_dot(r.values.data(), r.cols.data(), r.cols.size(), s.data());
  }
}

std::vector<double> matvec(const CsrMatrix& m, std::span<const double> s) {
  std::vector<double> out(m.rows());
  matvec(m, s, out);
  return out;
}

void transpose_matvec(const CsrMatrix& m, std::span<const double> u, std::span<double> out) {
  if (u.size() != m.rows() || out.size() != m.cols()) {
    throw DimensionMismatch("transpose_matvec: expected u of length " + std::to_string(m.rows()));
  }
  std::fill(out.begin(), out.end(), 0.0);
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (u[i] == 0.0) continue;
    const CsrMatrix::Row r = m.row(i);
    k.sparse_axpy(u[i], r.values.data(), r.cols.data(), r.cols.size(), out.data());
  }
}

std::vector<double> transpose_matvec(const CsrMatrix& m, std::span<const double> u) {
  std::vector<double> out(m.cols());
  transpose_matvec(m, u, out);
  return out;
}

HessianOperator::HessianOperator(double lambda, const CsrMatrix& matrix, std::vector<double> diag)
    : lambda_(lambda), matrix_(&matrix), diag_(std::move(diag)), scratch_(matrix.rows()) {
  if (!(lambda_ > 0.0)) throw InvalidArgument("lambda must be positive");
  if (diag_.size() != matrix.rows()) {
    throw DimensionMismatch("Hessian diagonal length must equal the number of rows");
  }
  for (double d : diag_) {
    if (!(d >= 0.0)) throw InvalidArgument("Hessian diagonal entries must be nonnegative");
  }
}

void HessianOperator::apply(std::span<const double> s, std::span<double> out) const {
  const CsrMatrix& x = *matrix_;
  if (s.size() != x.cols() || out.size() != x.cols()) {
    throw DimensionMismatch("hessian_vector_product: dimension mismatch");
  }
  matvec(x, s, scratch_);
  for (std::size_t i = 0; i < scratch_.size(); ++i) scratch_[i] *= diag_[i];
  transpose_matvec(x, scratch_, out);
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  kernels::active().scale(inv_n, out.data(), out.size());
  kernels::active().axpy(lambda_, s.data(), out.data(), out.size());
}

double HessianOperator::quadratic_form(std::span<const double> s,
                                       std::span<const double> xs) const {
  if (xs.size() != diag_.size()) throw DimensionMismatch("quadratic_form: X s length mismatch");
  double weighted = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) weighted += diag_[i] * xs[i] * xs[i];
  return lambda_ * vec::dot(s, s) + weighted / static_cast<double>(diag_.size());
}

std::vector<double> hessian_vector_product(const HessianOperator& op, std::span<const double> s) {
  std::vector<double> out(op.matrix().cols());
  op.apply(s, out);
  return out;
}

}  // namespace smoothsvm
