#include <cmath>
#include <vector>

#include "doctest.h"
#include "smoothsvm/errors.hpp"
#include "smoothsvm/first_order.hpp"
#include "smoothsvm/tron.hpp"
#include "test_support.hpp"

using namespace smoothsvm;

TEST_CASE("fgd stays at a stationary start") {
  const Dataset d(CsrMatrix::from_dense(2, 1, std::vector<double>{1.0, 1.0}), {1, -1});
  const Objective obj(d, 0.5, LossSpec::logistic());
  const TrainReport r = fgd_train(obj, {.step = 0.0, .iterations = 20, .tol = 0.0});
  CHECK(r.weights == std::vector<double>{0.0});
}

TEST_CASE("fgd on least squares converges to the normal-equation solution") {
  testing::Gen g(31);
  const std::size_t n = 40;
  const std::size_t p = 6;
  const auto dense = testing::random_dense(g, n, p, 0.7);
  std::vector<int> labels(n);
  for (int& y : labels) y = g.coin() ? 1 : -1;
  const Dataset d(CsrMatrix::from_dense(n, p, dense), labels);
  const double lambda = 0.05;
  const Objective obj(d, lambda, LossSpec::least_squares());

  // (lambda I + X^T X / n) w = X^T y / n with theta = 1.
  const std::vector<double> ones(n, 1.0);
  const auto h = testing::dense_hessian(dense, n, p, lambda, ones);
  std::vector<double> rhs(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) rhs[j] += labels[i] * dense[i * p + j] / static_cast<double>(n);
  }
  const auto w_star = testing::cholesky_solve(h, p, rhs);

  const TrainReport r = fgd_train(obj, {.step = 0.0, .iterations = 5000, .tol = 0.0});
  for (std::size_t t = 0; t + 1 < r.objective_trace.size(); ++t) {
    // Monotone up to rounding once the iterates have settled.
    CHECK(r.objective_trace[t + 1] <= r.objective_trace[t] * (1.0 + 1e-15));
  }
  CHECK(testing::max_rel_err(r.weights, w_star) <= 1e-9);
  CHECK(r.warnings.empty());
}

TEST_CASE("fgd and tron agree on a smooth problem") {
  testing::Gen g(32);
  const Dataset d = testing::random_dataset(g, 60, 8, 0.5);
  const Objective obj(d, 0.1, LossSpec::smooth_hinge_g(0.5));
  TronConfig cfg;
  cfg.tol = 1e-11;
  const TrainReport newton = tron_train(obj, cfg);
  const TrainReport gd = fgd_train(obj, {.step = 0.0, .iterations = 20000, .tol = 1e-10});
  CHECK(testing::max_rel_err(gd.weights, newton.weights) <= 1e-6);
}

TEST_CASE("fgd warns about steps above the safe bound") {
  testing::Gen g(33);
  const Dataset d = testing::random_dataset(g, 10, 3, 0.5);
  const Objective obj(d, 0.1, LossSpec::logistic());
  const double safe = safe_gradient_step(obj);
  CHECK(safe > 0.0);
  const TrainReport r = fgd_train(obj, {.step = 10.0 * safe, .iterations = 5, .tol = 0.0});
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("one sgd step from zero") {
  const Dataset d(CsrMatrix::from_dense(1, 2, std::vector<double>{0.5, -2.0}), {-1});
  const Objective obj(d, 0.0, LossSpec::smooth_hinge_g(0.5));
  const double eta0 = 0.3;
  const TrainReport r = sgd_train(obj, {.epochs = 1, .schedule = StepSchedule::inverse_t(eta0), .seed = 1});
  // Phi(theta / sigma) = Phi(2).
  const double phi2 = 0.9772498680518208;
  CHECK(r.weights[0] == doctest::Approx(eta0 * phi2 * -1.0 * 0.5).epsilon(1e-15));
  CHECK(r.weights[1] == doctest::Approx(eta0 * phi2 * -1.0 * -2.0).epsilon(1e-15));
}

TEST_CASE("sgd is deterministic per seed") {
  testing::Gen g(34);
  const Dataset d = testing::random_dataset(g, 50, 6, 0.5);
  const Objective obj(d, 0.01, LossSpec::logistic());
  const SgdConfig cfg{.epochs = 4, .schedule = StepSchedule::pegasos(), .seed = 99};
  const TrainReport a = sgd_train(obj, cfg);
  const TrainReport b = sgd_train(obj, cfg);
  CHECK(a.weights == b.weights);
  CHECK(a.objective_trace == b.objective_trace);
  SgdConfig other = cfg;
  other.seed = 100;
  CHECK(sgd_train(obj, other).weights != a.weights);
}

TEST_CASE("sgd approaches the optimum on average") {
  testing::Gen g(35);
  const Dataset d = testing::random_dataset(g, 200, 10, 0.4);
  const Objective obj(d, 1e-2, LossSpec::logistic());
  TronConfig cfg;
  cfg.tol = 1e-10;
  const double optimum = tron_train(obj, cfg).final_objective();
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    total += objective_value(obj, sgd_train(obj, {.epochs = 30, .schedule = StepSchedule::pegasos(), .seed = seed})
                                       .weights);
  }
  const double mean = total / 20.0;
  CHECK(mean >= optimum);
  CHECK(mean <= 1.05 * optimum);
}

TEST_CASE("pegasos update branches") {
  const Dataset d(CsrMatrix::from_dense(1, 1, std::vector<double>{1.0}), {1});
  const Objective obj(d, 0.5, LossSpec::hinge());
  // t = 0, eta = 2: margin 0 < 1, active branch gives w = 2.
  CHECK(pegasos_train(obj, {.epochs = 1, .schedule = StepSchedule::pegasos(), .seed = 0}).weights[0] == 2.0);
  // t = 1, eta = 1: margin 2 > 1, pure shrink gives w = (1 - 0.5) 2 = 1.
  CHECK(pegasos_train(obj, {.epochs = 2, .schedule = StepSchedule::pegasos(), .seed = 0}).weights[0] == 1.0);
}

TEST_CASE("pegasos configuration checks") {
  testing::Gen g(36);
  const Dataset d = testing::random_dataset(g, 10, 3, 0.5);
  const SgdConfig cfg{.epochs = 1, .schedule = StepSchedule::pegasos(), .seed = 0};
  CHECK_THROWS_AS(pegasos_train(Objective(d, 0.1, LossSpec::logistic()), cfg), WrongLoss);
  CHECK_THROWS_AS(pegasos_train(Objective(d, 0.1, LossSpec::hinge()),
                                {.epochs = 1, .schedule = StepSchedule::inverse_t(0.1), .seed = 0}),
                  ConfigError);
  CHECK_THROWS_AS(sgd_train(Objective(d, 0.1, LossSpec::hinge()), cfg), NonDifferentiable);
}

TEST_CASE("pegasos hinge objective sits within the smoothing gap of tron") {
  testing::Gen g(37);
  const Dataset d = testing::random_dataset(g, 300, 10, 0.5);
  const double lambda = 0.1;
  const double sigma = 0.05;
  const LossSpec smooth = LossSpec::smooth_hinge_g(sigma);
  TronConfig cfg;
  cfg.tol = 1e-10;
  const double smooth_opt = tron_train(Objective(d, lambda, smooth), cfg).final_objective();

  const Objective hinge_obj(d, lambda, LossSpec::hinge());
  const TrainReport peg = pegasos_train(hinge_obj, {.epochs = 300, .schedule = StepSchedule::pegasos(), .seed = 3});
  const double hinge_val = objective_value(hinge_obj, peg.weights);
  // min L_hinge lies in [min L_smooth - gap, min L_smooth].
  CHECK(hinge_val >= smooth_opt - hinge_gap_bound(smooth) - 1e-12);
  CHECK(hinge_val <= smooth_opt + 0.01 * smooth_opt);
}
