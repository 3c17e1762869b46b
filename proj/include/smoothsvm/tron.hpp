#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smoothsvm/csr.hpp"
#include "smoothsvm/objective.hpp"
#include "smoothsvm/train_report.hpp"

namespace smoothsvm {

/// CG forcing term: Fixed uses xi_t = value, GradientScaled uses
/// xi_t = min(cap, value * ||grad L(w_t)||).
struct XiPolicy {
  enum class Kind { Fixed, GradientScaled };
  Kind kind = Kind::Fixed;
  double value = 0.1;
  double cap = 0.1;

  static XiPolicy fixed(double xi) { return {Kind::Fixed, xi, 0.1}; }
  static XiPolicy gradient_scaled(double kappa, double cap = 0.1) { return {Kind::GradientScaled, kappa, cap}; }

  double at(double grad_norm) const;
};

struct TronConfig {
  double tol = 5e-4;
  std::size_t max_newton_iters = 200;
  std::size_t max_cg_iters = 0;  // 0 selects min(2p, 500)
  XiPolicy xi_policy{};
  double eta0 = 1e-4;
  double eta1 = 0.25;
  double eta2 = 0.75;
  double delta1 = 0.25;
  double delta2 = 0.5;
  double delta3 = 4.0;

  /// Throws ConfigError when the ordering constraints fail.
  void validate() const;
};

enum class CgStatus { ResidualConverged, BoundaryHit, IterCap };

struct CgResult {
  std::vector<double> step;
  CgStatus status;
  std::size_t iterations;  // Hessian-vector products
};

/// tau > 0 with ||s + tau p|| = delta, for ||s|| <= delta and p != 0.
double boundary_step_length(std::span<const double> s, std::span<const double> p, double delta);

/// Steihaug CG on min <g, s> + s^T H s / 2 subject to ||s|| <= delta,
/// stopping when ||r|| <= xi ||g||. Throws NumericalBreakdown if p^T H p <= 0.
CgResult cg_subproblem(std::span<const double> g, const HessianOperator& h, double delta, double xi,
                       std::size_t max_iters);

/// Radius after a step with ratio rho. Shrinking branches return the middle
/// of the admissible interval; growth doubles, or uses delta3 after a
/// boundary step.
double trust_region_update(double rho, double delta, double step_norm, const TronConfig& cfg,
                           bool boundary_hit = false);

/// Trust-region Newton from w = 0. Needs lambda > 0 and a loss with
/// supports_newton(); Hinge throws NonDifferentiable, WangKh Unsupported.
TrainReport tron_train(const Objective& obj, const TronConfig& cfg = {});

}  // namespace smoothsvm
