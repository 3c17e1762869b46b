#include "smoothsvm/split.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/rng.hpp"

namespace smoothsvm {

std::vector<FoldSplit> kfold_split(std::size_t n, const SplitPlan& plan) {
  if (plan.folds < 2) throw InvalidArgument("folds must be at least 2");
  if (plan.repetitions < 1) throw InvalidArgument("repetitions must be at least 1");
  if (n < plan.folds) {
    throw TooFewInstances(std::to_string(n) + " instances cannot fill " + std::to_string(plan.folds) + " folds");
  }

  std::vector<FoldSplit> splits;
  splits.reserve(plan.folds * plan.repetitions);
  std::vector<std::size_t> perm(n);
  std::vector<std::size_t> fold_of(n);
  for (std::size_t rep = 0; rep < plan.repetitions; ++rep) {
    Rng rng(mix_seed(plan.seed, rep));
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(i + 1)]);

    const std::size_t base = n / plan.folds;
    const std::size_t extra = n % plan.folds;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < plan.folds; ++f) {
      const std::size_t size = base + (f < extra ? 1 : 0);
      for (std::size_t k = 0; k < size; ++k) fold_of[perm[pos++]] = f;
    }

    for (std::size_t f = 0; f < plan.folds; ++f) {
      FoldSplit split{rep, f, {}, {}};
      for (std::size_t i = 0; i < n; ++i) (fold_of[i] == f ? split.test : split.train).push_back(i);
      splits.push_back(std::move(split));
    }
  }
  return splits;
}

std::vector<FoldSplit> kfold_split(const Dataset& data, const SplitPlan& plan) {
  return kfold_split(data.size(), plan);
}

}  // namespace smoothsvm
