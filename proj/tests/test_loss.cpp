#include <doctest.h>

#include <cmath>
#include <numbers>

#include "smoothsvm/errors.hpp"
#include "smoothsvm/loss.hpp"

using namespace smoothsvm;

namespace {
constexpr double kTol = 1e-12;
}

TEST_CASE("eval reference values") {
  CHECK(eval(LossSpec::smooth_hinge_g(1.0), 1.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(kTol));
  CHECK(eval(LossSpec::smooth_hinge_m(1.0), 1.0) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(eval(LossSpec::smooth_hinge_m(1.0), 0.0) == doctest::Approx(1.2071067811865475).epsilon(kTol));
  CHECK(eval(LossSpec::hinge(), 2.0) == 0.0);
  CHECK(eval(LossSpec::hinge(), 0.0) == 1.0);
  CHECK(eval(LossSpec::logistic(), 0.0) == doctest::Approx(std::log(2.0)).epsilon(kTol));
  CHECK(eval(LossSpec::shalev_gamma(0.5), 0.75) == doctest::Approx(0.0625).epsilon(kTol));
  CHECK(eval(LossSpec::wang_kh(1.0), 1.0) == 0.0);
  CHECK(eval(LossSpec::squared_hinge(), -1.0) == doctest::Approx(4.0));
  CHECK(eval(LossSpec::least_squares(), 3.0) == doctest::Approx(2.0));
}

TEST_CASE("smooth hinge G at sigma 1/4 across the tail") {
  const LossSpec g = LossSpec::smooth_hinge_g(0.25);
  CHECK(eval(g, -2.0) == doctest::Approx(3.0).epsilon(kTol));
  CHECK(eval(g, 0.3) == doctest::Approx(0.7001902716644454).epsilon(kTol));
  CHECK(eval(g, 1.7) == doctest::Approx(1.902716644454378e-4).epsilon(1e-10));
  CHECK(eval(g, 4.0) == doctest::Approx(3.6513e-35).epsilon(1e-4));
  CHECK(eval(g, 40.0) >= 0.0);
}

TEST_CASE("grad and curvature reference values") {
  CHECK(grad(LossSpec::smooth_hinge_g(1.0), 1.0) == doctest::Approx(-0.5).epsilon(kTol));
  CHECK(grad(LossSpec::smooth_hinge_m(1.0), 1.0) == doctest::Approx(-0.5).epsilon(kTol));
  CHECK(grad(LossSpec::exponential(), 0.0) == doctest::Approx(-1.0).epsilon(kTol));
  // Phi_M(1) = (1 + 1/sqrt 2) / 2.
  CHECK(grad(LossSpec::smooth_hinge_m(1.0), 0.0) == doctest::Approx(-0.8535533905932738).epsilon(kTol));
  CHECK(curvature(LossSpec::smooth_hinge_m(1.0), 1.0) == doctest::Approx(0.5).epsilon(kTol));
  CHECK(curvature(LossSpec::least_squares(), -7.0) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(curvature(LossSpec::smooth_hinge_g(2.0), 1.0) == doctest::Approx(0.19947114020071634).epsilon(kTol));
}

TEST_CASE("piecewise curvature at breakpoints takes the right limit") {
  const LossSpec sq = LossSpec::squared_hinge();
  CHECK(curvature(sq, 0.5) == 2.0);
  CHECK(curvature(sq, 1.0) == 0.0);
  CHECK(curvature(sq, 2.0) == 0.0);
  const LossSpec sg = LossSpec::shalev_gamma(0.5);
  CHECK(curvature(sg, 0.5) == doctest::Approx(2.0));  // alpha = 1 - gamma
  CHECK(curvature(sg, 1.0) == 0.0);
  CHECK(curvature(sg, 0.0) == 0.0);
  CHECK(grad(sg, 0.0) == doctest::Approx(-1.0));
}

TEST_CASE("hinge has no derivative") {
  CHECK_THROWS_AS(grad(LossSpec::hinge(), 0.0), NonDifferentiable);
  CHECK_THROWS_AS(curvature(LossSpec::hinge(), 0.0), NonDifferentiable);
  CHECK_THROWS_AS(is_calibrated(LossSpec::hinge()), NonDifferentiable);
  CHECK_FALSE(is_differentiable(LossSpec::hinge()));
  CHECK_FALSE(supports_newton(LossSpec::wang_kh(1.0)));
  CHECK(supports_newton(LossSpec::squared_hinge()));
}

TEST_CASE("conjugate reference values") {
  CHECK(conjugate(LossSpec::least_squares(), 1.0) == doctest::Approx(1.5).epsilon(kTol));
  CHECK(conjugate(LossSpec::logistic(), -0.5) == doctest::Approx(-std::log(2.0)).epsilon(kTol));
  CHECK(conjugate(LossSpec::smooth_hinge_m(1.0), -0.5) == doctest::Approx(-1.0).epsilon(kTol));
  // sigma != 1 discriminates the sigma factor.
  CHECK(conjugate(LossSpec::smooth_hinge_g(0.25), -0.3) == doctest::Approx(-0.38692315355001844).epsilon(1e-11));
  CHECK(conjugate(LossSpec::logistic(0.25), -0.3) == doctest::Approx(-0.15271607551372337).epsilon(1e-11));
  CHECK(conjugate(LossSpec::exponential(0.25), -2.0) == doctest::Approx(-0.15342640972002735).epsilon(1e-11));
  CHECK(conjugate(LossSpec::smooth_absolute(0.25), 0.7) == doctest::Approx(0.7670214393919828).epsilon(1e-11));
  CHECK(conjugate(LossSpec::smooth_hinge_m(0.25), -0.3) == doctest::Approx(-0.414564392373896).epsilon(1e-11));
}

TEST_CASE("conjugate domains") {
  const Interval g = conjugate_domain(LossSpec::smooth_hinge_g(1.0));
  CHECK(g.lower == -1.0);
  CHECK(g.upper == 0.0);
  const Interval e = conjugate_domain(LossSpec::exponential());
  CHECK(std::isinf(e.lower));
  CHECK(e.upper == 0.0);
  const Interval a = conjugate_domain(LossSpec::smooth_absolute(1.0));
  CHECK(a.lower == doctest::Approx(-std::numbers::pi / 2));
  CHECK(a.upper == doctest::Approx(std::numbers::pi / 2));
  const Interval ls = conjugate_domain(LossSpec::least_squares());
  CHECK(ls.contains(1e300));
  CHECK_THROWS_AS(conjugate(LossSpec::smooth_hinge_g(1.0), 0.1), OutOfDomain);
  CHECK_THROWS_AS(conjugate(LossSpec::smooth_hinge_g(1.0), -1.0), OutOfDomain);
  CHECK_THROWS_AS(conjugate_domain(LossSpec::hinge()), Unsupported);
  CHECK_THROWS_AS(conjugate(LossSpec::shalev_gamma(1.0), -0.5), Unsupported);
}

TEST_CASE("hinge gap bounds") {
  CHECK(hinge_gap_bound(LossSpec::smooth_hinge_g(1.0)) == doctest::Approx(0.3989422804014327));
  CHECK(hinge_gap_bound(LossSpec::smooth_hinge_m(0.25)) == doctest::Approx(0.125));
  CHECK_THROWS_AS(hinge_gap_bound(LossSpec::logistic()), Unsupported);
  CHECK_THROWS_AS(hinge_gap_bound(LossSpec::smooth_hinge_m(1.0, 2.0)), Unsupported);
}

TEST_CASE("curvature certificates") {
  const CurvatureCertificate m = curvature_bounds(LossSpec::smooth_hinge_m(1.0));
  CHECK(m.gamma_lower == 0.0);
  CHECK(m.mu_upper == doctest::Approx(0.5));
  const CurvatureCertificate g = curvature_bounds(LossSpec::smooth_hinge_g(1.0));
  CHECK(g.mu_upper == doctest::Approx(0.3989422804014327));
  const CurvatureCertificate ls = curvature_bounds(LossSpec::least_squares());
  CHECK(ls.gamma_lower == 1.0);
  CHECK(ls.mu_upper == 1.0);
  CHECK(std::isinf(curvature_bounds(LossSpec::exponential()).mu_upper));
  CHECK_THROWS_AS(curvature_bounds(LossSpec::hinge()), Unsupported);
}

TEST_CASE("calibration") {
  CHECK(is_calibrated(LossSpec::smooth_hinge_g(1.0)));
  CHECK(is_calibrated(LossSpec::smooth_hinge_m(1.0)));
  CHECK(is_calibrated(LossSpec::logistic()));
  CHECK(is_calibrated(LossSpec::exponential()));
  CHECK(is_calibrated(LossSpec::smooth_absolute(1.0)));
  CHECK_FALSE(is_calibrated(LossSpec::least_squares(1.0, -1.0)));
}

TEST_CASE("construction validates parameters") {
  CHECK_THROWS_AS(LossSpec::smooth_hinge_g(0.0), InvalidArgument);
  CHECK_THROWS_AS(LossSpec::smooth_hinge_m(-1.0), InvalidArgument);
  CHECK_THROWS_AS(LossSpec::shalev_gamma(0.0), InvalidArgument);
  CHECK_THROWS_AS(LossSpec::wang_kh(-2.0), InvalidArgument);
  CHECK_THROWS_AS(LossSpec::smooth_absolute(1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(LossSpec::hinge(std::nan("")), InvalidArgument);
  CHECK_THROWS_AS(LossSpec::make(LossFamily::Custom), InvalidArgument);
  CHECK_NOTHROW(LossSpec::hinge(0.5));
}

TEST_CASE("family names round trip") {
  for (LossFamily f : {LossFamily::SmoothHingeG, LossFamily::SmoothHingeM, LossFamily::Logistic,
                       LossFamily::Exponential, LossFamily::LeastSquares, LossFamily::SmoothAbsolute,
                       LossFamily::SmoothReLU, LossFamily::Hinge, LossFamily::SquaredHinge, LossFamily::ShalevGamma,
                       LossFamily::WangKh}) {
    CHECK(parse_family(family_name(f)) == f);
  }
  CHECK(family_name(LossFamily::SquaredHinge) == "sq-hinge");
  CHECK_THROWS_AS(parse_family("custom"), InvalidArgument);
  CHECK_THROWS_AS(parse_family("l1"), InvalidArgument);
}

TEST_CASE("default theta and describe") {
  CHECK(LossSpec::make(LossFamily::Logistic).theta() == 0.0);
  CHECK(LossSpec::make(LossFamily::SmoothReLU, {.theta = std::nullopt, .sigma = 0.5}).theta() == 0.0);
  CHECK(LossSpec::make(LossFamily::SmoothHingeM).theta() == 1.0);
  CHECK(LossSpec::smooth_hinge_m(0.125).describe() == "smooth-hinge-m(theta=1, sigma=0.125)");
}

TEST_CASE("rescaled smooth absolute approaches |theta - alpha|") {
  const LossSpec raw = LossSpec::smooth_absolute(1e-6);
  const LossSpec scaled = LossSpec::smooth_absolute(1e-6, 1.0, true);
  CHECK(eval(scaled, -2.0) == doctest::Approx(3.0).epsilon(1e-5));
  CHECK(eval(raw, -2.0) == doctest::Approx(1.5 * std::numbers::pi).epsilon(1e-5));
}

TEST_CASE("exponential saturates instead of overflowing") {
  const LossSpec e = LossSpec::exponential();
  CHECK(std::isfinite(eval(e, -1e6)));
  CHECK(std::isfinite(grad(e, -1e6)));
}

TEST_CASE("batch evaluation matches scalar calls") {
  const LossSpec l = LossSpec::logistic(0.5, 1.0);
  const double alpha[] = {-3.0, 0.0, 0.7, 12.0};
  double v[4], g[4], c[4];
  eval_batch(l, alpha, v);
  grad_batch(l, alpha, g);
  curvature_batch(l, alpha, c);
  for (int i = 0; i < 4; ++i) {
    CHECK(v[i] == eval(l, alpha[i]));
    CHECK(g[i] == grad(l, alpha[i]));
    CHECK(c[i] == curvature(l, alpha[i]));
  }
  double short_out[3];
  CHECK_THROWS_AS(eval_batch(l, alpha, short_out), DimensionMismatch);
}
