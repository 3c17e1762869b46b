// smoothsvm command-line tool: train, predict, eval, cv, sweep-sigma, compare
// and generate. Exit codes: 0 success, 1 usage or data error, 2 a solver run
// stopped before reaching its tolerance.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/experiment.hpp"
#include "smoothsvm/libsvm_io.hpp"
#include "smoothsvm/report.hpp"
#include "smoothsvm/synthetic.hpp"

namespace fs = std::filesystem;
using namespace smoothsvm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

struct Options {
  std::string data;
  std::string loss = "smooth-hinge-g";
  std::optional<double> theta;
  double sigma = 1.0;
  double gamma = 1.0;
  double bandwidth = 1.0;
  bool abs_rescale = false;
  double lambda = 1e-5;
  std::string solver = "tron";
  double tol = 5e-4;
  double xi = 0.1;
  std::optional<double> kappa;
  std::optional<std::size_t> max_iter;
  std::optional<double> step;
  std::size_t epochs = 10;
  std::size_t folds = 5;
  std::size_t reps = 4;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  std::string model = "model.json";
  std::string report;
  std::vector<double> sigmas;
  std::string pairs = "tron:logistic,tron:smooth-hinge-g,pegasos:hinge";
  std::size_t jobs = 1;
  // generate
  std::size_t n = 2000;
  std::size_t p = 100;
  std::size_t nnz = 10;
  double noise = 0.0;
};

void add_data(CLI::App* cmd, Options& o) {
  cmd->add_option("data", o.data, "LIBSVM file (relative paths also tried under SMOOTHSVM_DATA_DIR)")->required();
}

void add_loss(CLI::App* cmd, Options& o) {
  cmd->add_option("--loss", o.loss, "loss family")->capture_default_str();
  cmd->add_option("--theta", o.theta, "loss location theta (family default when omitted)");
  cmd->add_option("--sigma", o.sigma, "smoothing parameter sigma")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "shalev-gamma smoothing width")->capture_default_str();
  cmd->add_option("--bandwidth", o.bandwidth, "wang-kh bandwidth h")->capture_default_str();
  cmd->add_flag("--abs-rescale", o.abs_rescale, "scale smooth-abs by 2/pi");
}

void add_solver(CLI::App* cmd, Options& o) {
  cmd->add_option("--lambda", o.lambda, "regularization lambda")->capture_default_str();
  cmd->add_option("--solver", o.solver, "tron, fgd, sgd or pegasos")->capture_default_str();
  cmd->add_option("--tol", o.tol, "gradient-norm tolerance")->capture_default_str();
  cmd->add_option("--xi", o.xi, "CG forcing term (cap when --kappa is set)")->capture_default_str();
  cmd->add_option("--kappa", o.kappa, "use xi_t = min(xi, kappa ||grad||)");
  cmd->add_option("--max-iter", o.max_iter, "outer iterations (tron 200, fgd 1000)");
  cmd->add_option("--step", o.step, "fgd step, or sgd eta0 for eta0/(1+t)");
  cmd->add_option("--epochs", o.epochs, "sgd/pegasos epochs")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for splits and sampling")->capture_default_str();
}

void add_cv(CLI::App* cmd, Options& o) {
  cmd->add_option("--folds", o.folds, "folds per repetition")->capture_default_str();
  cmd->add_option("--reps", o.reps, "repetitions")->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "parallel runs")->capture_default_str();
}

void add_output(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", o.out, "output file (stdout when omitted)");
}

fs::path resolve_data(const std::string& path) {
  const fs::path p(path);
  if (p.is_relative() && !fs::exists(p)) {
    if (const char* root = std::getenv("SMOOTHSVM_DATA_DIR")) {
      const fs::path candidate = fs::path(root) / p;
      if (fs::exists(candidate)) return candidate;
    }
  }
  return p;
}

Dataset load_data(const std::string& path, std::optional<std::size_t> dimension = std::nullopt) {
  LibsvmStats stats;
  Dataset d = read_libsvm_file(resolve_data(path), LibsvmOptions{dimension}, &stats);
  if (stats.dropped_features > 0) {
    std::cerr << "warning: dropped " << stats.dropped_features << " features beyond dimension " << *dimension << "\n";
  }
  return d;
}

RunConfig make_config(const Options& o) {
  RunConfig cfg;
  cfg.loss = parse_family(o.loss);
  cfg.loss_params.theta = o.theta;
  cfg.loss_params.sigma = o.sigma;
  cfg.loss_params.gamma = o.gamma;
  cfg.loss_params.bandwidth = o.bandwidth;
  cfg.loss_params.rescale_absolute = o.abs_rescale;
  cfg.lambda = o.lambda;
  cfg.solver = parse_solver(o.solver);
  cfg.options.tol = o.tol;
  cfg.options.xi = o.xi;
  cfg.options.kappa = o.kappa;
  cfg.options.max_iter = o.max_iter;
  cfg.options.step = o.step;
  cfg.options.epochs = o.epochs;
  cfg.seed = o.seed;
  cfg.split = SplitPlan{o.folds, o.reps, o.seed};
  cfg.validate();
  return cfg;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("write error on '" + path + "'");
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_train(const Options& o) {
  const RunConfig cfg = make_config(o);
  const Dataset data = load_data(o.data);
  const Objective obj(data, cfg.lambda, cfg.make_loss());
  const TrainReport report = train(obj, cfg, cfg.seed);
  print_warnings(report.warnings);
  save_model(Model{obj.loss(), cfg.lambda, std::string(solver_name(cfg.solver)), report.weights}, o.model);
  const std::string text = o.format == "csv" ? train_report_csv(report) : train_report_json(report);
  emit(text, o.report.empty() ? o.out : o.report);
  if (!report.converged) {
    std::cerr << "solver stopped after " << report.iterations << " iterations with gradient norm "
              << report.final_grad_norm() << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_predict(const Options& o) {
  const Model model = load_model(o.model);
  const Dataset data = load_data(o.data, model.weights.size());
  std::string text;
  for (int label : predict(model.weights, data.features())) text += label > 0 ? "+1\n" : "-1\n";
  emit(text, o.out);
  return kExitOk;
}

int cmd_eval(const Options& o) {
  const Model model = load_model(o.model);
  const Dataset data = load_data(o.data, model.weights.size());
  emit(format_double(accuracy(model.weights, data)) + "\n", o.out);
  return kExitOk;
}

int cmd_cv(const Options& o) {
  const RunConfig cfg = make_config(o);
  const Dataset data = load_data(o.data);
  const ExperimentReport report = run_cv(data, cfg, o.jobs);
  print_warnings(report.warnings);
  emit(o.format == "csv" ? experiment_csv(report) : experiment_json(report), o.out);
  return report.all_converged() ? kExitOk : kExitNotConverged;
}

int cmd_sweep(const Options& o) {
  const RunConfig cfg = make_config(o);
  const Dataset data = load_data(o.data);
  const std::vector<double> sigmas = o.sigmas.empty() ? default_sigma_grid() : o.sigmas;
  const std::vector<SweepEntry> sweep = sweep_sigma(data, cfg, sigmas, o.jobs);
  bool converged = true;
  for (const SweepEntry& e : sweep) {
    print_warnings(e.report.warnings);
    converged = converged && e.report.all_converged();
  }
  emit(o.format == "csv" ? sweep_csv(sweep) : sweep_json(sweep), o.out);
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_compare(const Options& o) {
  RunConfig cfg;
  {
    // The loss and solver come from the pairs; validate the rest against a
    // pair that is always consistent.
    Options base = o;
    base.loss = "smooth-hinge-g";
    base.solver = "tron";
    cfg = make_config(base);
  }
  const Dataset data = load_data(o.data);
  const std::vector<CompareRow> rows = compare(data, cfg, parse_pairs(o.pairs), o.jobs);
  bool converged = true;
  for (const CompareRow& row : rows) {
    if (!row.valid) std::cerr << "warning: skipped " << row.solver << ":" << row.loss << ": " << row.warning << "\n";
    print_warnings(row.report.warnings);
    converged = converged && (!row.valid || row.report.all_converged());
  }
  emit(o.format == "csv" ? compare_csv(rows) : compare_json(rows), o.out);
  return converged ? kExitOk : kExitNotConverged;
}

int cmd_generate(const Options& o) {
  const SyntheticData s = synthetic_dataset(o.n, o.p, o.nnz, o.noise, o.seed);
  std::ostringstream text;
  write_libsvm(s.data, text);
  emit(text.str(), o.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smooth support vector machines with trust-region Newton and gradient baselines"};
  app.require_subcommand(1);
  Options o;

  CLI::App* train = app.add_subcommand("train", "train a model and write it with a training report");
  add_data(train, o);
  add_loss(train, o);
  add_solver(train, o);
  train->add_option("--model", o.model, "model output path")->capture_default_str();
  train->add_option("--report", o.report, "report output path (defaults to --out, then stdout)");
  add_output(train, o);

  CLI::App* predict_cmd = app.add_subcommand("predict", "print +1/-1 per instance");
  add_data(predict_cmd, o);
  predict_cmd->add_option("--model", o.model, "model file")->capture_default_str();
  predict_cmd->add_option("--out", o.out, "output file (stdout when omitted)");

  CLI::App* eval = app.add_subcommand("eval", "print the accuracy of a model");
  add_data(eval, o);
  eval->add_option("--model", o.model, "model file")->capture_default_str();
  eval->add_option("--out", o.out, "output file (stdout when omitted)");

  CLI::App* cv = app.add_subcommand("cv", "repeated k-fold cross-validation");
  add_data(cv, o);
  add_loss(cv, o);
  add_solver(cv, o);
  add_cv(cv, o);
  add_output(cv, o);

  CLI::App* sweep = app.add_subcommand("sweep-sigma", "cross-validation for each sigma");
  sweep->alias("sweep_sigma");
  add_data(sweep, o);
  add_loss(sweep, o);
  add_solver(sweep, o);
  add_cv(sweep, o);
  add_output(sweep, o);
  sweep->add_option("--sigmas", o.sigmas, "sigma values (default 2^-30, 2^-25, 2^-20, 2^-15, 2^-10..2^5)")
      ->delimiter(',');

  CLI::App* cmp = app.add_subcommand("compare", "cross-validation for solver:loss pairs");
  add_data(cmp, o);
  add_loss(cmp, o);
  add_solver(cmp, o);
  add_cv(cmp, o);
  add_output(cmp, o);
  cmp->add_option("--pairs", o.pairs, "comma-separated solver:loss pairs")->capture_default_str();

  CLI::App* gen = app.add_subcommand("generate", "write a synthetic LIBSVM dataset");
  gen->add_option("--n", o.n, "instances")->capture_default_str();
  gen->add_option("--p", o.p, "features")->capture_default_str();
  gen->add_option("--nnz", o.nnz, "nonzeros per row")->capture_default_str();
  gen->add_option("--noise", o.noise, "margin noise")->capture_default_str();
  gen->add_option("--seed", o.seed, "seed")->capture_default_str();
  gen->add_option("--out", o.out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (train->parsed()) return cmd_train(o);
    if (predict_cmd->parsed()) return cmd_predict(o);
    if (eval->parsed()) return cmd_eval(o);
    if (cv->parsed()) return cmd_cv(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (cmp->parsed()) return cmd_compare(o);
    if (gen->parsed()) return cmd_generate(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
