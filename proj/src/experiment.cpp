#include "smoothsvm/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/first_order.hpp"
#include "smoothsvm/rng.hpp"
#include "smoothsvm/tron.hpp"

namespace smoothsvm {

std::string_view solver_name(SolverKind solver) noexcept {
  switch (solver) {
    case SolverKind::Tron: return "tron";
    case SolverKind::Fgd: return "fgd";
    case SolverKind::Sgd: return "sgd";
    case SolverKind::Pegasos: return "pegasos";
  }
  return "unknown";
}

SolverKind parse_solver(std::string_view name) {
  for (SolverKind s : {SolverKind::Tron, SolverKind::Fgd, SolverKind::Sgd, SolverKind::Pegasos}) {
    if (solver_name(s) == name) return s;
  }
  throw InvalidArgument("unknown solver '" + std::string(name) + "'");
}

LossSpec RunConfig::make_loss() const {
  try {
    return LossSpec::make(loss, loss_params);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

void RunConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
  const LossSpec spec = make_loss();
  const std::string pair = std::string(solver_name(solver)) + " with " + std::string(family_name(loss));
  if ((solver == SolverKind::Pegasos) != (loss == LossFamily::Hinge)) {
    throw ConfigError(pair + ": pegasos is the only solver for the hinge loss, and it needs the hinge loss");
  }
  if (solver == SolverKind::Tron && !supports_newton(spec)) {
    throw ConfigError(pair + ": tron needs a convex twice-differentiable loss");
  }
  if (!(options.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!(options.xi > 0.0 && options.xi < 1.0)) throw ConfigError("xi must lie in (0, 1)");
  if (options.kappa && !(*options.kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (options.max_iter && *options.max_iter == 0) throw ConfigError("max-iter must be positive");
  if (options.step && !(*options.step > 0.0)) throw ConfigError("step must be positive");
  if (options.epochs == 0) throw ConfigError("epochs must be positive");
  if (split.folds < 2) throw ConfigError("folds must be at least 2");
  if (split.repetitions < 1) throw ConfigError("reps must be at least 1");
}

TrainReport train(const Objective& obj, const RunConfig& cfg, std::uint64_t run_seed) {
  const SolverOptions& o = cfg.options;
  switch (cfg.solver) {
    case SolverKind::Tron: {
      TronConfig tc;
      tc.tol = o.tol;
      tc.max_newton_iters = o.max_iter.value_or(200);
      tc.xi_policy = o.kappa ? XiPolicy::gradient_scaled(*o.kappa, o.xi) : XiPolicy::fixed(o.xi);
      return tron_train(obj, tc);
    }
    case SolverKind::Fgd:
      return fgd_train(obj, FgdConfig{o.step.value_or(0.0), o.max_iter.value_or(1000), o.tol});
    case SolverKind::Sgd:
    case SolverKind::Pegasos: {
      SgdConfig sc;
      sc.epochs = o.epochs;
      sc.seed = run_seed;
      sc.schedule = o.step ? StepSchedule::inverse_t(*o.step) : StepSchedule::pegasos();
      if (cfg.solver == SolverKind::Pegasos) {
        sc.schedule = StepSchedule::pegasos();
        return pegasos_train(obj, sc);
      }
      return sgd_train(obj, sc);
    }
  }
  throw ConfigError("unknown solver");
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return a;
}

bool ExperimentReport::all_converged() const {
  for (const CvRecord& r : records) {
    if (!r.converged) return false;
  }
  return true;
}

namespace {

// Runs task(i) for i in [0, count) on up to `jobs` threads; rethrows the
// first exception after all threads finish.
template <class Task>
void parallel_for(std::size_t count, std::size_t jobs, Task task) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (std::size_t j = 0; j < jobs; ++j) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

ExperimentReport run_cv(const Dataset& data, const RunConfig& cfg, std::size_t jobs) {
  cfg.validate();
  const LossSpec loss = cfg.make_loss();
  const std::vector<FoldSplit> splits = kfold_split(data, cfg.split);

  ExperimentReport report;
  report.solver = solver_name(cfg.solver);
  report.loss = loss.describe();
  report.lambda = cfg.lambda;
  report.folds = cfg.split.folds;
  report.repetitions = cfg.split.repetitions;
  report.seed = cfg.seed;
  report.records.resize(splits.size());
  std::vector<std::vector<std::string>> warnings(splits.size());

  parallel_for(splits.size(), jobs, [&](std::size_t k) {
    const FoldSplit& split = splits[k];
    const Dataset train_set = data.subset(split.train);
    const Dataset test_set = data.subset(split.test);
    const Objective obj(train_set, cfg.lambda, loss);
    const std::uint64_t run_seed = mix_seed(cfg.seed, k);
    const TrainReport tr = train(obj, cfg, run_seed);

    CvRecord& r = report.records[k];
    r.fold = split.fold;
    r.repetition = split.repetition;
    r.seed = run_seed;
    r.accuracy = accuracy(tr.weights, test_set);
    r.train_accuracy = accuracy(tr.weights, train_set);
    r.wall_time_seconds = tr.wall_time_seconds;
    r.iterations = tr.iterations;
    r.final_grad_norm = tr.final_grad_norm();
    r.converged = tr.converged;
    for (const std::string& w : tr.warnings) {
      warnings[k].push_back("repetition " + std::to_string(split.repetition) + " fold " +
                            std::to_string(split.fold) + ": " + w);
    }
  });

  std::vector<double> acc;
  std::vector<double> times;
  for (const CvRecord& r : report.records) {
    acc.push_back(r.accuracy);
    times.push_back(r.wall_time_seconds);
  }
  report.accuracy = aggregate(acc);
  report.wall_time_seconds = aggregate(times);
  for (auto& w : warnings) report.warnings.insert(report.warnings.end(), w.begin(), w.end());
  return report;
}

std::vector<double> default_sigma_grid() {
  std::vector<double> grid;
  for (int e : {-30, -25, -20, -15}) grid.push_back(std::ldexp(1.0, e));
  for (int e = -10; e <= 5; ++e) grid.push_back(std::ldexp(1.0, e));
  return grid;
}

std::vector<SweepEntry> sweep_sigma(const Dataset& data, const RunConfig& cfg, const std::vector<double>& sigmas,
                                    std::size_t jobs) {
  if (sigmas.empty()) throw ConfigError("sigma list is empty");
  if (!uses_sigma(cfg.loss)) {
    throw ConfigError(std::string(family_name(cfg.loss)) + " has no sigma parameter");
  }
  std::vector<SweepEntry> out;
  for (double sigma : sigmas) {
    RunConfig c = cfg;
    c.loss_params.sigma = sigma;
    out.push_back({sigma, run_cv(data, c, jobs)});
  }
  return out;
}

std::vector<SolverLossPair> parse_pairs(std::string_view text) {
  std::vector<SolverLossPair> pairs;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("pair '" + std::string(item) + "' is not solver:loss");
    }
    pairs.push_back({parse_solver(item.substr(0, colon)), parse_family(item.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (pairs.empty()) throw InvalidArgument("no solver:loss pairs given");
  return pairs;
}

std::vector<CompareRow> compare(const Dataset& data, const RunConfig& cfg, const std::vector<SolverLossPair>& pairs,
                                std::size_t jobs) {
  std::vector<CompareRow> rows;
  for (const SolverLossPair& pair : pairs) {
    CompareRow row;
    row.solver = solver_name(pair.solver);
    row.loss = family_name(pair.loss);
    RunConfig c = cfg;
    c.solver = pair.solver;
    c.loss = pair.loss;
    try {
      c.validate();
    } catch (const ConfigError& e) {
      row.valid = false;
      row.warning = e.what();
      rows.push_back(std::move(row));
      continue;
    }
    row.report = run_cv(data, c, jobs);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace smoothsvm
