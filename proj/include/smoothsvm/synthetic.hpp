#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "smoothsvm/dataset.hpp"

namespace smoothsvm {

struct SyntheticData {
  Dataset data;
  std::vector<double> w_star;  // unit norm
};

/// Rows with exactly `nnz_per_row` standard-normal entries at uniformly drawn
/// columns; labels sign(w*^T x + margin_noise * N(0,1)) with ties to -1.
/// Throws InvalidArgument unless 1 <= nnz_per_row <= p, n >= 1, noise >= 0.
SyntheticData synthetic_dataset(std::size_t n, std::size_t p, std::size_t nnz_per_row, double margin_noise,
                                std::uint64_t seed);

}  // namespace smoothsvm
