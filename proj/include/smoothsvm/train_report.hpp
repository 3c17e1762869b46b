#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace smoothsvm {

/// Outcome of one training run. Every trace has one entry per visited
/// iterate w_0 .. w_T: entry t holds L(w_t), ||grad L(w_t)|| and the radius
/// before step t, plus the CG iterations, rho and acceptance of that step
/// (0, NaN and false for the final entry and for solvers without them).
struct TrainReport {
  std::string solver;
  std::vector<double> weights;
  std::size_t iterations = 0;
  std::vector<double> objective_trace;
  std::vector<double> grad_norm_trace;
  std::vector<std::size_t> cg_iters_trace;
  std::vector<double> radius_trace;
  std::vector<double> rho_trace;
  std::vector<int> accepted_trace;
  double wall_time_seconds = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;

  double final_objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
  double final_grad_norm() const { return grad_norm_trace.empty() ? 0.0 : grad_norm_trace.back(); }
};

}  // namespace smoothsvm
