#pragma once

#include <cstddef>
#include <cstdint>

#include "smoothsvm/objective.hpp"
#include "smoothsvm/train_report.hpp"

namespace smoothsvm {

struct FgdConfig {
  double step = 0.0;  // <= 0 selects safe_gradient_step
  std::size_t iterations = 1000;
  double tol = 0.0;  // stop once ||grad L|| <= tol; 0 runs every iteration
};

/// 1 / (lambda + mu max_i ||x_i||^2), mu the curvature supremum of the loss.
/// Zero when mu is unbounded.
double safe_gradient_step(const Objective& obj);

/// w <- w - step grad L(w) from w = 0. A step above safe_gradient_step
/// adds a warning to the report.
TrainReport fgd_train(const Objective& obj, const FgdConfig& cfg);

struct StepSchedule {
  enum class Kind { InverseT, PegasosRate };
  Kind kind = Kind::InverseT;
  double eta0 = 0.1;

  static StepSchedule inverse_t(double eta0) { return {Kind::InverseT, eta0}; }
  static StepSchedule pegasos() { return {Kind::PegasosRate, 0.0}; }

  /// Rate of update t = 0, 1, ...: eta0 / (1 + t) or 1 / (lambda (t + 1)).
  double rate(std::size_t t, double lambda) const;
};

struct SgdConfig {
  std::size_t epochs = 10;
  StepSchedule schedule{};
  std::uint64_t seed = 0;
};

/// One update per sampled instance (uniform, with replacement), n updates per
/// epoch; traces are recorded after each epoch. Runs that finish all epochs
/// report converged = true.
TrainReport sgd_train(const Objective& obj, const SgdConfig& cfg);

/// SGD with the hinge subgradient. Throws WrongLoss for other losses and
/// ConfigError unless the schedule is PegasosRate.
TrainReport pegasos_train(const Objective& obj, const SgdConfig& cfg);

}  // namespace smoothsvm
