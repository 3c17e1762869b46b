#include "smoothsvm/dataset.hpp"

#include "smoothsvm/errors.hpp"

namespace smoothsvm {

Dataset::Dataset(CsrMatrix features, std::vector<int> labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (labels_.size() != features_.rows()) {
    throw DimensionMismatch("label count differs from the number of instances");
  }
  if (labels_.empty()) throw InvalidArgument("dataset needs at least one instance");
  if (features_.cols() == 0) throw InvalidArgument("dataset needs at least one feature");
  for (int y : labels_) {
    if (y != 1 && y != -1) throw InvalidArgument("labels must be +1 or -1");
  }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<int> labels;
  labels.reserve(indices.size());
  for (std::size_t i : indices) labels.push_back(labels_.at(i));
  return Dataset(features_.select_rows(indices), std::move(labels));
}

std::vector<int> predict(std::span<const double> w, const CsrMatrix& features) {
  const std::vector<double> scores = matvec(features, w);
  std::vector<int> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] > 0.0 ? 1 : -1;
  return labels;
}

double accuracy(std::span<const double> w, const Dataset& data) {
  const std::vector<int> predicted = predict(w, data.features());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) correct += predicted[i] == data.labels()[i];
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

double sparsity_metric(const Dataset& data) {
  return static_cast<double>(data.features().nnz()) /
         (static_cast<double>(data.size()) * static_cast<double>(data.dimension()));
}

}  // namespace smoothsvm
