#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "smoothsvm/dataset.hpp"

namespace smoothsvm {

struct SplitPlan {
  std::size_t folds = 5;
  std::size_t repetitions = 4;
  std::uint64_t seed = 0;
};

struct FoldSplit {
  std::size_t repetition;
  std::size_t fold;
  std::vector<std::size_t> train;  // sorted
  std::vector<std::size_t> test;   // sorted
};

/// folds * repetitions splits ordered by (repetition, fold). Each repetition
/// cuts an independent seeded permutation into `folds` parts whose sizes
/// differ by at most one, the remainder going to the lowest folds.
/// Throws InvalidArgument for folds < 2 or repetitions < 1, TooFewInstances
/// when n < folds.
std::vector<FoldSplit> kfold_split(std::size_t n, const SplitPlan& plan);
std::vector<FoldSplit> kfold_split(const Dataset& data, const SplitPlan& plan);

}  // namespace smoothsvm
