#include "smoothsvm/first_order.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/kernels.hpp"
#include "smoothsvm/rng.hpp"

namespace smoothsvm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void record(TrainReport& r, double f, double gnorm) {
  r.objective_trace.push_back(f);
  r.grad_norm_trace.push_back(gnorm);
  r.radius_trace.push_back(kNaN);
  r.cg_iters_trace.push_back(0);
  r.rho_trace.push_back(kNaN);
  r.accepted_trace.push_back(0);
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double grad_norm_or_nan(const Objective& obj, std::span<const double> w) {
  if (!is_differentiable(obj.loss())) return kNaN;
  return vec::norm(obj.gradient(w));
}

// w is stored as scale * v so the shrink factor (1 - eta lambda) costs O(1).
class ScaledVector {
 public:
  explicit ScaledVector(std::size_t p) : v_(p, 0.0) {}

  double dot_row(const CsrMatrix::Row& row) const {
    double sum = 0.0;
    for (std::size_t k = 0; k < row.cols.size(); ++k) sum += v_[row.cols[k]] * row.values[k];
    return scale_ * sum;
  }

  void shrink(double factor) {
    if (factor == 0.0) {
      std::fill(v_.begin(), v_.end(), 0.0);
      scale_ = 1.0;
      return;
    }
    scale_ *= factor;
    if (std::abs(scale_) < 1e-9) normalize();
  }

  void add_row(double coef, const CsrMatrix::Row& row) {
    const double c = coef / scale_;
    for (std::size_t k = 0; k < row.cols.size(); ++k) v_[row.cols[k]] += c * row.values[k];
  }

  std::vector<double> materialize() const {
    std::vector<double> w = v_;
    vec::scale(scale_, w);
    return w;
  }

 private:
  void normalize() {
    vec::scale(scale_, v_);
    scale_ = 1.0;
  }

  std::vector<double> v_;
  double scale_ = 1.0;
};

// Shared loop of sgd_train and pegasos_train. `coefficient` maps a margin to
// the factor c in w <- (1 - eta lambda) w + eta c y x.
template <class Coefficient>
TrainReport stochastic_loop(const Objective& obj, const SgdConfig& cfg, const char* name,
                            Coefficient coefficient) {
  if (cfg.epochs == 0) throw ConfigError("epochs must be positive");
  if (cfg.schedule.kind == StepSchedule::Kind::PegasosRate && !(obj.lambda() > 0.0)) {
    throw ConfigError("the Pegasos rate needs lambda > 0");
  }
  if (cfg.schedule.kind == StepSchedule::Kind::InverseT && !(cfg.schedule.eta0 > 0.0)) {
    throw ConfigError("eta0 must be positive");
  }

  const auto start = std::chrono::steady_clock::now();
  const CsrMatrix& x = obj.data().features();
  const auto y = obj.data().labels();
  const std::size_t n = obj.size();
  const double lambda = obj.lambda();

  TrainReport report;
  report.solver = name;
  ScaledVector w(obj.dimension());
  {
    const std::vector<double> w0(obj.dimension(), 0.0);
    record(report, obj.value(w0), grad_norm_or_nan(obj, w0));
  }

  Rng rng(cfg.seed);
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t k = 0; k < n; ++k, ++t) {
      const std::size_t i = rng.uniform_index(n);
      const auto row = x.row(i);
      const double margin = y[i] * w.dot_row(row);
      const double eta = cfg.schedule.rate(t, lambda);
      const double c = coefficient(margin);
      w.shrink(1.0 - eta * lambda);
      if (c != 0.0) w.add_row(eta * c * y[i], row);
    }
    ++report.iterations;
    const std::vector<double> current = w.materialize();
    record(report, obj.value(current), grad_norm_or_nan(obj, current));
  }

  report.weights = w.materialize();
  report.converged = true;
  report.wall_time_seconds = elapsed_since(start);
  return report;
}

}  // namespace

double safe_gradient_step(const Objective& obj) {
  const LossSpec& loss = obj.loss();
  double mu = 0.0;
  switch (loss.family()) {
    case LossFamily::Hinge: return 0.0;
    case LossFamily::SquaredHinge: mu = 2.0; break;
    case LossFamily::ShalevGamma: mu = 1.0 / loss.gamma(); break;
    case LossFamily::WangKh: mu = 15.0 / (8.0 * loss.bandwidth()); break;
    default: mu = curvature_bounds(loss).mu_upper;
  }
  if (!std::isfinite(mu)) return 0.0;
  const CsrMatrix& x = obj.data().features();
  double max_row = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    max_row = std::max(max_row, vec::dot(row.values, row.values));
  }
  return 1.0 / (obj.lambda() + mu * max_row);
}

TrainReport fgd_train(const Objective& obj, const FgdConfig& cfg) {
  if (!is_differentiable(obj.loss())) throw NonDifferentiable("FGD needs a differentiable loss");
  if (!(cfg.tol >= 0.0)) throw ConfigError("tol must be nonnegative");

  const auto start = std::chrono::steady_clock::now();
  TrainReport report;
  report.solver = "fgd";

  const double safe = safe_gradient_step(obj);
  double step = cfg.step;
  if (!(step > 0.0)) {
    if (!(safe > 0.0)) throw ConfigError("no safe step is known for this loss; pass a positive step");
    step = safe;
  } else if (safe > 0.0 && step > safe) {
    report.warnings.push_back("step " + std::to_string(step) + " exceeds the safe step " + std::to_string(safe));
  }

  std::vector<double> w(obj.dimension(), 0.0);
  std::vector<double> g(obj.dimension());
  std::vector<double> alpha = obj.margins(w);
  obj.gradient_at(w, alpha, g);
  double gnorm = vec::norm(g);
  record(report, obj.value_at(w, alpha), gnorm);

  while (report.iterations < cfg.iterations && !(cfg.tol > 0.0 && gnorm <= cfg.tol) && gnorm > 0.0) {
    vec::axpy(-step, g, w);
    alpha = obj.margins(w);
    obj.gradient_at(w, alpha, g);
    gnorm = vec::norm(g);
    ++report.iterations;
    record(report, obj.value_at(w, alpha), gnorm);
  }

  report.converged = gnorm == 0.0 || (cfg.tol > 0.0 && gnorm <= cfg.tol);
  report.weights = std::move(w);
  report.wall_time_seconds = elapsed_since(start);
  return report;
}

double StepSchedule::rate(std::size_t t, double lambda) const {
  if (kind == Kind::InverseT) return eta0 / (1.0 + static_cast<double>(t));
  return 1.0 / (lambda * static_cast<double>(t + 1));
}

TrainReport sgd_train(const Objective& obj, const SgdConfig& cfg) {
  const LossSpec& loss = obj.loss();
  if (!is_differentiable(loss)) throw NonDifferentiable("SGD needs a differentiable loss; use pegasos for hinge");
  return stochastic_loop(obj, cfg, "sgd", [&loss](double margin) { return -grad(loss, margin); });
}

TrainReport pegasos_train(const Objective& obj, const SgdConfig& cfg) {
  if (obj.loss().family() != LossFamily::Hinge) {
    throw WrongLoss("pegasos needs the hinge loss, got " + obj.loss().describe());
  }
  if (cfg.schedule.kind != StepSchedule::Kind::PegasosRate) throw ConfigError("pegasos uses the 1/(lambda t) rate");
  const double theta = obj.loss().theta();
  return stochastic_loop(obj, cfg, "pegasos", [theta](double margin) { return margin < theta ? 1.0 : 0.0; });
}

}  // namespace smoothsvm
