#include "smoothsvm/tron.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/kernels.hpp"

namespace smoothsvm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void push_state(TrainReport& r, double f, double gnorm, double delta) {
  r.objective_trace.push_back(f);
  r.grad_norm_trace.push_back(gnorm);
  r.radius_trace.push_back(delta);
  r.cg_iters_trace.push_back(0);
  r.rho_trace.push_back(kNaN);
  r.accepted_trace.push_back(0);
}

}  // namespace

double XiPolicy::at(double grad_norm) const {
  if (kind == Kind::Fixed) return value;
  return std::min(cap, value * grad_norm);
}

void TronConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_newton_iters == 0) throw ConfigError("max_newton_iters must be positive");
  if (!(0.0 < eta0 && eta0 < eta1 && eta1 < eta2 && eta2 < 1.0)) {
    throw ConfigError("need 0 < eta0 < eta1 < eta2 < 1");
  }
  if (!(0.0 < delta1 && delta1 < delta2 && delta2 < 1.0 && 1.0 < delta3)) {
    throw ConfigError("need 0 < delta1 < delta2 < 1 < delta3");
  }
  if (xi_policy.kind == XiPolicy::Kind::Fixed && !(xi_policy.value > 0.0 && xi_policy.value < 1.0)) {
    throw ConfigError("xi must lie in (0, 1)");
  }
  if (xi_policy.kind == XiPolicy::Kind::GradientScaled &&
      !(xi_policy.value > 0.0 && xi_policy.cap > 0.0 && xi_policy.cap < 1.0)) {
    throw ConfigError("kappa must be positive and the xi cap in (0, 1)");
  }
}

double boundary_step_length(std::span<const double> s, std::span<const double> p, double delta) {
  const double sp = vec::dot(s, p);
  const double pp = vec::dot(p, p);
  const double gap = std::max(0.0, delta * delta - vec::dot(s, s));
  const double root = std::sqrt(sp * sp + pp * gap);
  // (-sp + root) / pp, rationalized when sp > 0 to avoid cancellation.
  if (sp <= 0.0) return (-sp + root) / pp;
  return gap / (sp + root);
}

CgResult cg_subproblem(std::span<const double> g, const HessianOperator& h, double delta, double xi,
                       std::size_t max_iters) {
  const std::size_t p_dim = g.size();
  if (!(delta > 0.0)) throw InvalidArgument("trust region radius must be positive");
  if (!(xi > 0.0 && xi < 1.0)) throw InvalidArgument("xi must lie in (0, 1)");
  if (h.matrix().cols() != p_dim) throw DimensionMismatch("gradient and Hessian dimensions differ");

  std::vector<double> s(p_dim, 0.0);
  std::vector<double> r(g.begin(), g.end());
  vec::scale(-1.0, r);
  std::vector<double> p = r;
  std::vector<double> hp(p_dim);

  const double threshold = xi * vec::norm(g);
  double rr = vec::dot(r, r);
  for (std::size_t k = 0;; ++k) {
    if (std::sqrt(rr) <= threshold) return {std::move(s), CgStatus::ResidualConverged, k};
    if (k == max_iters) return {std::move(s), CgStatus::IterCap, k};

    h.apply(p, hp);
    const double php = vec::dot(p, hp);
    if (!(php > 0.0)) throw NumericalBreakdown("p^T H p = " + std::to_string(php) + " in CG");
    const double alpha = rr / php;

    std::vector<double> trial = s;
    vec::axpy(alpha, p, trial);
    if (vec::norm(trial) > delta) {
      const double tau = boundary_step_length(s, p, delta);
      vec::axpy(tau, p, s);
      return {std::move(s), CgStatus::BoundaryHit, k + 1};
    }
    s = std::move(trial);
    vec::axpy(-alpha, hp, r);
    const double rr_next = vec::dot(r, r);
    vec::xpby(r, rr_next / rr, p);
    rr = rr_next;
  }
}

double trust_region_update(double rho, double delta, double step_norm, const TronConfig& cfg,
                           bool boundary_hit) {
  if (rho <= cfg.eta1 || std::isnan(rho)) {
    return 0.5 * (cfg.delta1 * std::min(step_norm, delta) + cfg.delta2 * delta);
  }
  if (rho < cfg.eta2) return 0.5 * (cfg.delta1 + cfg.delta2) * delta;
  if (boundary_hit) return cfg.delta3 * delta;
  return std::min(cfg.delta3 * delta, 2.0 * delta);
}

TrainReport tron_train(const Objective& obj, const TronConfig& cfg) {
  cfg.validate();
  const LossSpec& loss = obj.loss();
  if (loss.family() == LossFamily::Hinge) throw NonDifferentiable("TRON needs a differentiable loss");
  if (!supports_newton(loss)) throw Unsupported("TRON needs a convex loss, got " + loss.describe());
  if (!(obj.lambda() > 0.0)) throw InvalidArgument("TRON needs lambda > 0");

  const auto start = std::chrono::steady_clock::now();
  const CsrMatrix& x = obj.data().features();
  const auto y = obj.data().labels();
  const std::size_t n = obj.size();
  const std::size_t p = obj.dimension();
  const double inv_n = 1.0 / static_cast<double>(n);
  const double lambda = obj.lambda();
  const std::size_t cg_cap = cfg.max_cg_iters ? cfg.max_cg_iters : std::min<std::size_t>(2 * p, 500);

  TrainReport report;
  report.solver = "tron";
  std::vector<double> w(p, 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<double> g(p);
  obj.gradient_at(w, alpha, g);
  double f = obj.value_at(w, alpha);
  double gnorm = vec::norm(g);
  double delta = gnorm;
  push_state(report, f, gnorm, delta);

  std::vector<double> xs(n);
  std::vector<double> alpha_next(n);
  while (gnorm > cfg.tol && report.iterations < cfg.max_newton_iters) {
    HessianOperator h(lambda, x, obj.hessian_diagonal_at(alpha));
    CgResult cg = cg_subproblem(g, h, delta, cfg.xi_policy.at(gnorm), cg_cap);
    const std::vector<double>& s = cg.step;

    matvec(x, s, xs);
    const double ss = vec::dot(s, s);
    double q = vec::dot(g, s) + 0.5 * lambda * ss;
    double curv = 0.0;
    const auto d = h.diag();
    for (std::size_t i = 0; i < n; ++i) curv += d[i] * xs[i] * xs[i];
    q += 0.5 * inv_n * curv;

    // L(w + s) - L(w), summed from per-instance increments so the ratio
    // stays meaningful when the reduction is near machine precision.
    double loss_change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dz = y[i] * xs[i];
      loss_change += increment(loss, alpha[i], dz);
      alpha_next[i] = alpha[i] + dz;
    }
    const double actual = lambda * (vec::dot(w, s) + 0.5 * ss) + inv_n * loss_change;

    const double step_norm = std::sqrt(ss);
    double rho = kNaN;
    bool accepted = false;
    if (std::abs(q) < 1e-300) {
      delta *= 0.5;
    } else {
      rho = actual / q;
      accepted = rho > cfg.eta0;
      delta = trust_region_update(rho, delta, step_norm, cfg, cg.status == CgStatus::BoundaryHit);
    }

    report.cg_iters_trace.back() = cg.iterations;
    report.rho_trace.back() = rho;
    report.accepted_trace.back() = accepted ? 1 : 0;
    ++report.iterations;

    if (accepted) {
      vec::axpy(1.0, s, w);
      alpha = obj.margins(w);
      obj.gradient_at(w, alpha, g);
      gnorm = vec::norm(g);
      f += actual;
    }
    push_state(report, f, gnorm, delta);
    if (!(delta > 0.0) || !std::isfinite(delta)) {
      report.warnings.push_back("trust region radius degenerated to " + std::to_string(delta));
      break;
    }
  }

  report.converged = gnorm <= cfg.tol;
  report.weights = std::move(w);
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace smoothsvm
