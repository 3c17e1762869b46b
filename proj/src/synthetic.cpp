#include "smoothsvm/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/rng.hpp"

namespace smoothsvm {

SyntheticData synthetic_dataset(std::size_t n, std::size_t p, std::size_t nnz_per_row, double margin_noise,
                                std::uint64_t seed) {
  if (n == 0 || p == 0) throw InvalidArgument("synthetic dataset needs n >= 1 and p >= 1");
  if (nnz_per_row == 0 || nnz_per_row > p) throw InvalidArgument("nnz_per_row must lie in [1, p]");
  if (!(margin_noise >= 0.0) || !std::isfinite(margin_noise)) {
    throw InvalidArgument("margin_noise must be finite and nonnegative");
  }

  Rng rng(seed);
  std::vector<double> w_star(p);
  double norm2 = 0.0;
  while (norm2 == 0.0) {
    for (double& w : w_star) w = rng.normal();
    norm2 = 0.0;
    for (double w : w_star) norm2 += w * w;
  }
  const double inv_norm = 1.0 / std::sqrt(norm2);
  for (double& w : w_star) w *= inv_norm;

  std::vector<std::size_t> offsets{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> values;
  std::vector<int> labels;
  offsets.reserve(n + 1);
  cols.reserve(n * nnz_per_row);
  values.reserve(n * nnz_per_row);
  labels.reserve(n);

  std::vector<std::uint32_t> row_cols;
  std::vector<char> taken(p, 0);
  for (std::size_t i = 0; i < n; ++i) {
    // Floyd's sampling of nnz_per_row distinct columns.
    row_cols.clear();
    for (std::size_t j = p - nnz_per_row; j < p; ++j) {
      const std::size_t t = rng.uniform_index(j + 1);
      const std::size_t pick = taken[t] ? j : t;
      taken[pick] = 1;
      row_cols.push_back(static_cast<std::uint32_t>(pick));
    }
    std::sort(row_cols.begin(), row_cols.end());
    double score = 0.0;
    for (std::uint32_t c : row_cols) {
      taken[c] = 0;
      const double v = rng.normal();
      cols.push_back(c);
      values.push_back(v);
      score += w_star[c] * v;
    }
    if (margin_noise > 0.0) score += margin_noise * rng.normal();
    labels.push_back(score > 0.0 ? 1 : -1);
    offsets.push_back(cols.size());
  }
  return {Dataset(CsrMatrix(n, p, std::move(offsets), std::move(cols), std::move(values)), std::move(labels)),
          std::move(w_star)};
}

}  // namespace smoothsvm
