#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smoothsvm/dataset.hpp"
#include "smoothsvm/loss.hpp"
#include "smoothsvm/objective.hpp"
#include "smoothsvm/split.hpp"
#include "smoothsvm/train_report.hpp"

namespace smoothsvm {

enum class SolverKind { Tron, Fgd, Sgd, Pegasos };

std::string_view solver_name(SolverKind solver) noexcept;
/// Throws InvalidArgument on unknown names.
SolverKind parse_solver(std::string_view name);

struct SolverOptions {
  double tol = 5e-4;
  double xi = 0.1;
  std::optional<double> kappa;      // GradientScaled forcing when set (TRON)
  std::optional<std::size_t> max_iter;  // TRON: 200, FGD: 1000
  std::optional<double> step;       // FGD step; SGD eta0 (InverseT). Unset: safe step / Pegasos rate
  std::size_t epochs = 10;
};

struct RunConfig {
  LossFamily loss = LossFamily::SmoothHingeG;
  LossParams loss_params{};
  double lambda = 1e-5;
  SolverKind solver = SolverKind::Tron;
  SolverOptions options{};
  std::uint64_t seed = 0;
  SplitPlan split{};

  /// pegasos <=> hinge; tron needs supports_newton; fgd and sgd need a
  /// differentiable loss; numeric ranges. Throws ConfigError.
  void validate() const;

  LossSpec make_loss() const;
};

/// Trains with the configured solver; `run_seed` feeds SGD sampling.
TrainReport train(const Objective& obj, const RunConfig& cfg, std::uint64_t run_seed);

struct CvRecord {
  std::size_t fold = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;  // solver seed of this run
  double accuracy = 0.0;   // on the held-out fold
  double train_accuracy = 0.0;
  double wall_time_seconds = 0.0;
  std::size_t iterations = 0;
  double final_grad_norm = 0.0;
  bool converged = false;
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one record
};

Aggregate aggregate(const std::vector<double>& values);

struct ExperimentReport {
  std::string solver;
  std::string loss;
  double lambda = 0.0;
  std::size_t folds = 0;
  std::size_t repetitions = 0;
  std::uint64_t seed = 0;
  std::vector<CvRecord> records;  // ordered by (repetition, fold)
  Aggregate accuracy;
  Aggregate wall_time_seconds;
  std::vector<std::string> warnings;

  bool all_converged() const;
};

/// folds x repetitions train/test runs. `jobs` > 1 runs them on that many
/// threads; results do not depend on it.
ExperimentReport run_cv(const Dataset& data, const RunConfig& cfg, std::size_t jobs = 1);

/// 2^-30, 2^-25, 2^-20, 2^-15, then every power 2^-10 .. 2^5.
std::vector<double> default_sigma_grid();

struct SweepEntry {
  double sigma;
  ExperimentReport report;
};

/// One cross-validation per sigma. The loss must use sigma.
std::vector<SweepEntry> sweep_sigma(const Dataset& data, const RunConfig& cfg, const std::vector<double>& sigmas,
                                    std::size_t jobs = 1);

struct SolverLossPair {
  SolverKind solver;
  LossFamily loss;
};

/// Parses "tron:logistic,pegasos:hinge".
std::vector<SolverLossPair> parse_pairs(std::string_view text);

struct CompareRow {
  std::string solver;
  std::string loss;
  bool valid = true;
  std::string warning;  // set when the pair was skipped
  ExperimentReport report;
};

/// One row per pair; invalid pairs produce a row with valid = false.
std::vector<CompareRow> compare(const Dataset& data, const RunConfig& cfg, const std::vector<SolverLossPair>& pairs,
                                std::size_t jobs = 1);

}  // namespace smoothsvm
