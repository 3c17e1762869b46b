#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smoothsvm/csr.hpp"

namespace smoothsvm {

/// Feature matrix plus +1/-1 labels, at least one instance and one feature.
class Dataset {
 public:
  Dataset(CsrMatrix features, std::vector<int> labels);

  const CsrMatrix& features() const noexcept { return features_; }
  std::span<const int> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dimension() const noexcept { return features_.cols(); }

  Dataset subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  CsrMatrix features_;
  std::vector<int> labels_;
};

/// +1 iff w^T x > 0; ties go to -1.
std::vector<int> predict(std::span<const double> w, const CsrMatrix& features);

/// Fraction of instances whose predicted label equals the true one.
double accuracy(std::span<const double> w, const Dataset& data);

/// Stored nonzeros over n p.
double sparsity_metric(const Dataset& data);

}  // namespace smoothsvm
