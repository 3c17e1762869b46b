#include "smoothsvm/objective.hpp"

#include <cmath>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/kernels.hpp"

namespace smoothsvm {

Objective::Objective(const Dataset& data, double lambda, LossSpec loss)
    : data_(&data), lambda_(lambda), loss_(std::move(loss)) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be finite and >= 0");
  if (loss_.family() == LossFamily::LeastSquares && !(loss_.theta() > 0.0)) {
    throw InvalidArgument("least-squares classification needs theta > 0");
  }
}

void Objective::check_dimension(std::span<const double> w) const {
  if (w.size() != dimension()) {
    throw DimensionMismatch("weight vector has " + std::to_string(w.size()) + " entries, data has " +
                            std::to_string(dimension()) + " features");
  }
}

std::vector<double> Objective::margins(std::span<const double> w) const {
  check_dimension(w);
  std::vector<double> alpha = matvec(data_->features(), w);
  const auto y = data_->labels();
  for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] *= y[i];
  return alpha;
}

double Objective::value(std::span<const double> w) const { return value_at(w, margins(w)); }

double Objective::value_at(std::span<const double> w, std::span<const double> alpha) const {
  check_dimension(w);
  double sum = 0.0;
  for (double a : alpha) sum += eval(loss_, a);
  return 0.5 * lambda_ * vec::dot(w, w) + sum / static_cast<double>(alpha.size());
}

std::vector<double> Objective::gradient(std::span<const double> w) const {
  std::vector<double> g(dimension());
  gradient_at(w, margins(w), g);
  return g;
}

void Objective::gradient_at(std::span<const double> w, std::span<const double> alpha,
                            std::span<double> out) const {
  check_dimension(w);
  if (out.size() != dimension()) throw DimensionMismatch("gradient output has the wrong size");
  std::vector<double> u(alpha.size());
  grad_batch(loss_, alpha, u);
  const auto y = data_->labels();
  const double inv_n = 1.0 / static_cast<double>(alpha.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= y[i] * inv_n;
  transpose_matvec(data_->features(), u, out);
  vec::axpy(lambda_, w, out);
}

std::vector<double> Objective::hessian_diagonal(std::span<const double> w) const {
  return hessian_diagonal_at(margins(w));
}

std::vector<double> Objective::hessian_diagonal_at(std::span<const double> alpha) const {
  std::vector<double> d(alpha.size());
  curvature_batch(loss_, alpha, d);
  return d;
}

HessianOperator Objective::hessian(std::span<const double> w) const {
  return HessianOperator(lambda_, data_->features(), hessian_diagonal(w));
}

double objective_value(const Objective& obj, std::span<const double> w) { return obj.value(w); }

std::vector<double> objective_gradient(const Objective& obj, std::span<const double> w) {
  return obj.gradient(w);
}

std::vector<double> hessian_diagonal(const Objective& obj, std::span<const double> w) {
  return obj.hessian_diagonal(w);
}

}  // namespace smoothsvm
