#pragma once

#include <span>
#include <vector>

#include "smoothsvm/csr.hpp"
#include "smoothsvm/dataset.hpp"
#include "smoothsvm/loss.hpp"

namespace smoothsvm {

/// L(w) = lambda ||w||^2 / 2 + (1/n) sum_i psi(y_i w^T x_i).
///
/// Keeps a reference to the dataset, which must outlive the objective.
/// lambda = 0 is accepted here; the solvers that need strong convexity
/// reject it. LeastSquares needs theta > 0.
class Objective {
 public:
  Objective(const Dataset& data, double lambda, LossSpec loss);

  const Dataset& data() const noexcept { return *data_; }
  double lambda() const noexcept { return lambda_; }
  const LossSpec& loss() const noexcept { return loss_; }
  std::size_t dimension() const noexcept { return data_->dimension(); }
  std::size_t size() const noexcept { return data_->size(); }

  /// alpha_i = y_i w^T x_i.
  std::vector<double> margins(std::span<const double> w) const;

  double value(std::span<const double> w) const;
  double value_at(std::span<const double> w, std::span<const double> margins) const;

  std::vector<double> gradient(std::span<const double> w) const;
  void gradient_at(std::span<const double> w, std::span<const double> margins, std::span<double> out) const;

  /// d_i = psi''(alpha_i).
  std::vector<double> hessian_diagonal(std::span<const double> w) const;
  std::vector<double> hessian_diagonal_at(std::span<const double> margins) const;

  HessianOperator hessian(std::span<const double> w) const;

 private:
  void check_dimension(std::span<const double> w) const;

  const Dataset* data_;
  double lambda_;
  LossSpec loss_;
};

double objective_value(const Objective& obj, std::span<const double> w);
std::vector<double> objective_gradient(const Objective& obj, std::span<const double> w);
std::vector<double> hessian_diagonal(const Objective& obj, std::span<const double> w);

}  // namespace smoothsvm
