#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "smoothsvm/experiment.hpp"
#include "smoothsvm/loss.hpp"
#include "smoothsvm/train_report.hpp"

namespace smoothsvm {

struct Model {
  LossSpec loss;
  double lambda;
  std::string solver;
  std::vector<double> weights;
};

/// {"format": "smoothsvm-model", "version": 1, "loss": {...}, "lambda",
/// "solver", "dimension", "weights"}. Custom losses cannot be stored.
std::string model_to_json(const Model& model);
/// Throws ParseError on malformed documents.
Model model_from_json(std::string_view text);
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

/// JSON documents carry a "digest": 16 hex digits of FNV-1a-64 over the
/// compact dump of the document with the digest and every
/// "wall_time_seconds" member removed, so reruns give equal digests.
std::string train_report_json(const TrainReport& report);
std::string experiment_json(const ExperimentReport& report);
std::string sweep_json(const std::vector<SweepEntry>& sweep);
std::string compare_json(const std::vector<CompareRow>& rows);

/// iteration,objective,grad_norm,cg_iters,radius,rho,accepted
std::string train_report_csv(const TrainReport& report);
/// fold,repetition,seed,accuracy,train_accuracy,wall_time_seconds,iterations,final_grad_norm,converged
std::string experiment_csv(const ExperimentReport& report);
/// sigma,fold,repetition,seed,accuracy,train_accuracy,wall_time_seconds,iterations,final_grad_norm,converged
std::string sweep_csv(const std::vector<SweepEntry>& sweep);
/// solver,loss,valid,accuracy_mean,accuracy_std,wall_time_mean,wall_time_std,runs,warning
std::string compare_csv(const std::vector<CompareRow>& rows);

/// Shortest round-trip decimal; NaN and infinities give an empty string.
std::string format_double(double x);

}  // namespace smoothsvm
