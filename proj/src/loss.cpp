#include "smoothsvm/loss.hpp"

#include <algorithm>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "loss_detail.hpp"
#include "smoothsvm/errors.hpp"
#include "smoothsvm/normal.hpp"

namespace smoothsvm {

using detail::gauss_legendre8;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(v) stays finite with headroom for the sigma factor.
const double kExpClamp = std::log(DBL_MAX) - 1.0;

// Below this |dv| the increment is integrated from the first derivative.
constexpr double kSmallStep = 0.1;

double softplus(double v) { return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v))); }

double sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

// phi(u) - u Phi(-u) for u >= 0, clamped at zero against cancellation.
double gauss_tail(double u) { return std::max(0.0, normal::pdf(u) - u * normal::cdf(-u)); }

// v Phi(v) + phi(v) = max(v, 0) + gauss_tail(|v|); never below max(v, 0).
double gauss_shape(double v) { return std::max(v, 0.0) + gauss_tail(std::abs(v)); }

double abs_scale(const LossSpec& l) { return l.rescale_absolute() ? 2.0 / std::numbers::pi : 1.0; }

double direct_increment(double (*f)(const LossSpec&, double), const LossSpec& l, double a,
                        double d) {
  return f(l, a + d) - f(l, a);
}

struct GaussHinge {
  static double eval(const LossSpec& l, double a) {
    const double t = l.theta() - a;
    return std::max(t, 0.0) + l.sigma() * gauss_tail(std::abs(t / l.sigma()));
  }
  static double grad(const LossSpec& l, double a) {
    return -normal::cdf((l.theta() - a) / l.sigma());
  }
  static double curv(const LossSpec& l, double a) {
    return normal::pdf((l.theta() - a) / l.sigma()) / l.sigma();
  }
  static double inc(const LossSpec& l, double a, double d) {
    const double dv = -d / l.sigma();
    if (std::abs(dv) > kSmallStep) return direct_increment(eval, l, a, d);
    const double v = (l.theta() - a) / l.sigma();
    return l.sigma() * gauss_legendre8([](double t) { return normal::cdf(t); }, v, dv);
  }
};

struct AlgebraicHinge {
  static double rate(double v) {
    const double r = std::hypot(1.0, v);
    if (v >= 0.0) return 0.5 * (1.0 + v / r);
    return 0.5 / (r * (r - v));
  }
  // r + u computed without cancellation when u < 0.
  static double lift(double u, double r, double sigma) {
    return u >= 0.0 ? r + u : sigma * sigma / (r - u);
  }
  static double eval(const LossSpec& l, double a) {
    const double u = l.theta() - a;
    return 0.5 * lift(u, std::hypot(u, l.sigma()), l.sigma());
  }
  static double grad(const LossSpec& l, double a) { return -rate((l.theta() - a) / l.sigma()); }
  static double curv(const LossSpec& l, double a) {
    const double r = std::hypot(1.0, (l.theta() - a) / l.sigma());
    return 0.5 / (r * r * r) / l.sigma();
  }
  static double inc(const LossSpec& l, double a, double d) {
    const double s = l.sigma();
    const double u = l.theta() - a;
    const double u2 = u - d;
    const double r = std::hypot(u, s);
    const double r2 = std::hypot(u2, s);
    return -0.5 * d * (lift(u, r, s) + lift(u2, r2, s)) / (r + r2);
  }
};

struct LogisticLoss {
  static double eval(const LossSpec& l, double a) {
    return l.sigma() * softplus((l.theta() - a) / l.sigma());
  }
  static double grad(const LossSpec& l, double a) { return -sigmoid((l.theta() - a) / l.sigma()); }
  static double curv(const LossSpec& l, double a) {
    const double v = (l.theta() - a) / l.sigma();
    return sigmoid(v) * sigmoid(-v) / l.sigma();
  }
  static double inc(const LossSpec& l, double a, double d) {
    const double dv = -d / l.sigma();
    if (std::abs(dv) > 1.0) return direct_increment(eval, l, a, d);
    const double v = (l.theta() - a) / l.sigma();
    return l.sigma() * std::log1p(sigmoid(v) * std::expm1(dv));
  }
};

struct ExponentialLoss {
  static double arg(const LossSpec& l, double a) {
    return std::min((l.theta() - a) / l.sigma(), kExpClamp);
  }
  static double eval(const LossSpec& l, double a) { return l.sigma() * std::exp(arg(l, a)); }
  static double grad(const LossSpec& l, double a) { return -std::exp(arg(l, a)); }
  static double curv(const LossSpec& l, double a) { return std::exp(arg(l, a)) / l.sigma(); }
  static double inc(const LossSpec& l, double a, double d) {
    const double v = (l.theta() - a) / l.sigma();
    const double dv = -d / l.sigma();
    if (std::abs(dv) > 1.0 || v >= kExpClamp || v + dv >= kExpClamp) {
      return direct_increment(eval, l, a, d);
    }
    return l.sigma() * std::exp(v) * std::expm1(dv);
  }
};

struct LeastSquaresLoss {
  static double eval(const LossSpec& l, double a) {
    const double u = l.theta() - a;
    return 0.5 * u * u;
  }
  static double grad(const LossSpec& l, double a) { return a - l.theta(); }
  static double curv(const LossSpec&, double) { return 1.0; }
  static double inc(const LossSpec& l, double a, double d) { return d * (0.5 * d - (l.theta() - a)); }
};

struct SmoothAbsoluteLoss {
  static double eval(const LossSpec& l, double a) {
    const double v = (l.theta() - a) / l.sigma();
    return abs_scale(l) * l.sigma() * (v * std::atan(v) - std::log(std::hypot(1.0, v)));
  }
  static double grad(const LossSpec& l, double a) {
    return -abs_scale(l) * std::atan((l.theta() - a) / l.sigma());
  }
  static double curv(const LossSpec& l, double a) {
    const double v = (l.theta() - a) / l.sigma();
    return abs_scale(l) / (l.sigma() * (1.0 + v * v));
  }
  static double inc(const LossSpec& l, double a, double d) {
    const double dv = -d / l.sigma();
    if (std::abs(dv) > kSmallStep) return direct_increment(eval, l, a, d);
    const double v = (l.theta() - a) / l.sigma();
    return abs_scale(l) * l.sigma() *
           gauss_legendre8([](double t) { return std::atan(t); }, v, dv);
  }
};

// Reflection of the Gaussian family: approximates max(0, a - theta).
struct SmoothRelu {
  static double eval(const LossSpec& l, double a) {
    return l.sigma() * gauss_shape((a - l.theta()) / l.sigma());
  }
  static double grad(const LossSpec& l, double a) {
    return normal::cdf((a - l.theta()) / l.sigma());
  }
  static double curv(const LossSpec& l, double a) {
    return normal::pdf((a - l.theta()) / l.sigma()) / l.sigma();
  }
  static double inc(const LossSpec& l, double a, double d) {
    const double du = d / l.sigma();
    if (std::abs(du) > kSmallStep) return direct_increment(eval, l, a, d);
    const double u = (a - l.theta()) / l.sigma();
    return l.sigma() * gauss_legendre8([](double t) { return normal::cdf(t); }, u, du);
  }
};

struct HingeLoss {
  static double eval(const LossSpec& l, double a) { return std::max(0.0, l.theta() - a); }
  [[noreturn]] static double grad(const LossSpec&, double) {
    throw NonDifferentiable("hinge loss has no derivative at its kink; use a subgradient solver");
  }
  [[noreturn]] static double curv(const LossSpec& l, double a) { grad(l, a); }
  static double inc(const LossSpec& l, double a, double d) {
    return direct_increment(eval, l, a, d);
  }
};

struct SquaredHingeLoss {
  static double eval(const LossSpec& l, double a) {
    const double t = std::max(0.0, l.theta() - a);
    return t * t;
  }
  static double grad(const LossSpec& l, double a) { return -2.0 * std::max(0.0, l.theta() - a); }
  static double curv(const LossSpec& l, double a) { return l.theta() - a > 0.0 ? 2.0 : 0.0; }
  static double inc(const LossSpec& l, double a, double d) {
    const double t = l.theta() - a;
    if (t > 0.0 && t - d > 0.0) return -d * (2.0 * t - d);
    return direct_increment(eval, l, a, d);
  }
};

struct ShalevGammaLoss {
  enum class Branch { Zero, Quadratic, Linear };
  static Branch branch(double t, double g) {
    if (t <= 0.0) return Branch::Zero;
    if (t >= g) return Branch::Linear;
    return Branch::Quadratic;
  }
  static double eval(const LossSpec& l, double a) {
    const double t = l.theta() - a;
    const double g = l.gamma();
    switch (branch(t, g)) {
      case Branch::Zero: return 0.0;
      case Branch::Linear: return t - 0.5 * g;
      case Branch::Quadratic: return t * t / (2.0 * g);
    }
    return 0.0;
  }
  static double grad(const LossSpec& l, double a) {
    const double t = l.theta() - a;
    switch (branch(t, l.gamma())) {
      case Branch::Zero: return 0.0;
      case Branch::Linear: return -1.0;
      case Branch::Quadratic: return -t / l.gamma();
    }
    return 0.0;
  }
  static double curv(const LossSpec& l, double a) {
    const double t = l.theta() - a;
    return (t > 0.0 && t <= l.gamma()) ? 1.0 / l.gamma() : 0.0;
  }
  static double inc(const LossSpec& l, double a, double d) {
    const double t = l.theta() - a;
    const double g = l.gamma();
    const Branch b = branch(t, g);
    if (b != branch(t - d, g)) return direct_increment(eval, l, a, d);
    switch (b) {
      case Branch::Zero: return 0.0;
      case Branch::Linear: return -d;
      case Branch::Quadratic: return -d * (2.0 * t - d) / (2.0 * g);
    }
    return 0.0;
  }
};

struct WangKhLoss {
  static double kernel(double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double u2 = u * u;
    return 0.5 + 15.0 / 16.0 * (u - 2.0 / 3.0 * u2 * u + 0.2 * u2 * u2 * u);
  }
  static double kernel_d1(double u) {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    const double w = 1.0 - u * u;
    return 15.0 / 16.0 * w * w;
  }
  static double kernel_d2(double u) {
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return -3.75 * u * (1.0 - u * u);
  }
  static double eval(const LossSpec& l, double a) {
    const double t = l.theta() - a;
    return t * kernel(t / l.bandwidth());
  }
  static double grad(const LossSpec& l, double a) {
    const double u = (l.theta() - a) / l.bandwidth();
    return -(kernel(u) + u * kernel_d1(u));
  }
  static double curv(const LossSpec& l, double a) {
    const double u = (l.theta() - a) / l.bandwidth();
    return (2.0 * kernel_d1(u) + u * kernel_d2(u)) / l.bandwidth();
  }
  static double inc(const LossSpec& l, double a, double d) {
    return direct_increment(eval, l, a, d);
  }
};

struct CustomLoss {
  static const GeneratorPair& gen(const LossSpec& l) { return *l.generator(); }
  static double eval(const LossSpec& l, double a) {
    const double v = (l.theta() - a) / l.sigma();
    return gen(l).phi_cap(v) * (l.theta() - a) + gen(l).phi_low(v) * l.sigma();
  }
  static double grad(const LossSpec& l, double a) {
    return -gen(l).phi_cap((l.theta() - a) / l.sigma());
  }
  static double curv(const LossSpec& l, double a) {
    return gen(l).phi_cap_deriv((l.theta() - a) / l.sigma()) / l.sigma();
  }
  static double inc(const LossSpec& l, double a, double d) {
    const double dv = -d / l.sigma();
    if (std::abs(dv) > kSmallStep) return direct_increment(eval, l, a, d);
    const double v = (l.theta() - a) / l.sigma();
    return l.sigma() * gauss_legendre8(gen(l).phi_cap, v, dv);
  }
};

template <class F>
decltype(auto) visit_family(LossFamily family, F&& fn) {
  switch (family) {
    case LossFamily::SmoothHingeG: return fn(GaussHinge{});
    case LossFamily::SmoothHingeM: return fn(AlgebraicHinge{});
    case LossFamily::Logistic: return fn(LogisticLoss{});
    case LossFamily::Exponential: return fn(ExponentialLoss{});
    case LossFamily::LeastSquares: return fn(LeastSquaresLoss{});
    case LossFamily::SmoothAbsolute: return fn(SmoothAbsoluteLoss{});
    case LossFamily::SmoothReLU: return fn(SmoothRelu{});
    case LossFamily::Hinge: return fn(HingeLoss{});
    case LossFamily::SquaredHinge: return fn(SquaredHingeLoss{});
    case LossFamily::ShalevGamma: return fn(ShalevGammaLoss{});
    case LossFamily::WangKh: return fn(WangKhLoss{});
    case LossFamily::Custom: return fn(CustomLoss{});
  }
  return fn(HingeLoss{});
}

void check_sizes(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw DimensionMismatch("batch input and output sizes differ");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

std::string_view family_name(LossFamily family) noexcept {
  switch (family) {
    case LossFamily::SmoothHingeG: return "smooth-hinge-g";
    case LossFamily::SmoothHingeM: return "smooth-hinge-m";
    case LossFamily::Logistic: return "logistic";
    case LossFamily::Exponential: return "exponential";
    case LossFamily::LeastSquares: return "least-squares";
    case LossFamily::SmoothAbsolute: return "smooth-abs";
    case LossFamily::SmoothReLU: return "srelu";
    case LossFamily::Hinge: return "hinge";
    case LossFamily::SquaredHinge: return "sq-hinge";
    case LossFamily::ShalevGamma: return "shalev-gamma";
    case LossFamily::WangKh: return "wang-kh";
    case LossFamily::Custom: return "custom";
  }
  return "unknown";
}

LossFamily parse_family(std::string_view name) {
  for (LossFamily f :
       {LossFamily::SmoothHingeG, LossFamily::SmoothHingeM, LossFamily::Logistic,
        LossFamily::Exponential, LossFamily::LeastSquares, LossFamily::SmoothAbsolute,
        LossFamily::SmoothReLU, LossFamily::Hinge, LossFamily::SquaredHinge,
        LossFamily::ShalevGamma, LossFamily::WangKh}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidArgument("unknown loss '" + std::string(name) + "'");
}

double default_theta(LossFamily family) noexcept {
  switch (family) {
    case LossFamily::Logistic:
    case LossFamily::Exponential:
    case LossFamily::SmoothReLU: return 0.0;
    default: return 1.0;
  }
}

bool uses_sigma(LossFamily family) noexcept {
  switch (family) {
    case LossFamily::Hinge:
    case LossFamily::SquaredHinge:
    case LossFamily::ShalevGamma:
    case LossFamily::WangKh: return false;
    default: return true;
  }
}

bool is_differentiable(const LossSpec& loss) noexcept {
  return loss.family() != LossFamily::Hinge;
}

bool supports_newton(const LossSpec& loss) noexcept {
  return loss.family() != LossFamily::Hinge && loss.family() != LossFamily::WangKh;
}

LossSpec LossSpec::make(LossFamily family, const LossParams& params) {
  if (family == LossFamily::Custom) {
    throw InvalidArgument("custom losses are built with from_generator");
  }
  LossSpec spec;
  spec.family_ = family;
  spec.theta_ = params.theta.value_or(default_theta(family));
  if (!std::isfinite(spec.theta_)) throw InvalidArgument("theta must be finite");
  if (uses_sigma(family)) {
    require_positive(params.sigma, "sigma");
    spec.sigma_ = params.sigma;
  }
  if (family == LossFamily::ShalevGamma) {
    require_positive(params.gamma, "gamma");
    spec.gamma_ = params.gamma;
  }
  if (family == LossFamily::WangKh) {
    require_positive(params.bandwidth, "bandwidth");
    spec.bandwidth_ = params.bandwidth;
  }
  if (family == LossFamily::SmoothAbsolute) {
    if (!(spec.theta_ > 0.0)) throw InvalidArgument("smooth absolute loss needs theta > 0");
    spec.rescale_absolute_ = params.rescale_absolute;
  }
  return spec;
}

LossSpec LossSpec::smooth_hinge_g(double sigma, double theta) {
  return make(LossFamily::SmoothHingeG, {.theta = theta, .sigma = sigma});
}
LossSpec LossSpec::smooth_hinge_m(double sigma, double theta) {
  return make(LossFamily::SmoothHingeM, {.theta = theta, .sigma = sigma});
}
LossSpec LossSpec::logistic(double sigma, double theta) {
  return make(LossFamily::Logistic, {.theta = theta, .sigma = sigma});
}
LossSpec LossSpec::exponential(double sigma, double theta) {
  return make(LossFamily::Exponential, {.theta = theta, .sigma = sigma});
}
LossSpec LossSpec::least_squares(double sigma, double theta) {
  return make(LossFamily::LeastSquares, {.theta = theta, .sigma = sigma});
}
LossSpec LossSpec::smooth_absolute(double sigma, double theta, bool rescale) {
  return make(LossFamily::SmoothAbsolute,
              {.theta = theta, .sigma = sigma, .rescale_absolute = rescale});
}
LossSpec LossSpec::smooth_relu(double sigma, double theta) {
  return make(LossFamily::SmoothReLU, {.theta = theta, .sigma = sigma});
}
LossSpec LossSpec::hinge(double theta) { return make(LossFamily::Hinge, {.theta = theta}); }
LossSpec LossSpec::squared_hinge(double theta) {
  return make(LossFamily::SquaredHinge, {.theta = theta});
}
LossSpec LossSpec::shalev_gamma(double gamma, double theta) {
  return make(LossFamily::ShalevGamma, {.theta = theta, .gamma = gamma});
}
LossSpec LossSpec::wang_kh(double bandwidth, double theta) {
  return make(LossFamily::WangKh, {.theta = theta, .bandwidth = bandwidth});
}

std::string LossSpec::describe() const {
  const auto num = [](double x) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
  };
  std::string out = std::string(family_name(family_)) + "(theta=" + num(theta_);
  if (uses_sigma(family_)) out += ", sigma=" + num(sigma_);
  if (family_ == LossFamily::ShalevGamma) out += ", gamma=" + num(gamma_);
  if (family_ == LossFamily::WangKh) out += ", h=" + num(bandwidth_);
  if (rescale_absolute_) out += ", rescaled";
  return out + ")";
}

double eval(const LossSpec& loss, double alpha) {
  return visit_family(loss.family(), [&](auto p) { return decltype(p)::eval(loss, alpha); });
}

double grad(const LossSpec& loss, double alpha) {
  return visit_family(loss.family(), [&](auto p) { return decltype(p)::grad(loss, alpha); });
}

double curvature(const LossSpec& loss, double alpha) {
  return visit_family(loss.family(), [&](auto p) { return decltype(p)::curv(loss, alpha); });
}

double increment(const LossSpec& loss, double alpha, double delta) {
  if (delta == 0.0) return 0.0;
  return visit_family(loss.family(),
                      [&](auto p) { return decltype(p)::inc(loss, alpha, delta); });
}

void eval_batch(const LossSpec& loss, std::span<const double> alpha, std::span<double> out) {
  check_sizes(alpha, out);
  visit_family(loss.family(), [&](auto p) {
    for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = decltype(p)::eval(loss, alpha[i]);
  });
}

void grad_batch(const LossSpec& loss, std::span<const double> alpha, std::span<double> out) {
  check_sizes(alpha, out);
  visit_family(loss.family(), [&](auto p) {
    for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = decltype(p)::grad(loss, alpha[i]);
  });
}

void curvature_batch(const LossSpec& loss, std::span<const double> alpha,
                     std::span<double> out) {
  check_sizes(alpha, out);
  visit_family(loss.family(), [&](auto p) {
    for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = decltype(p)::curv(loss, alpha[i]);
  });
}

Interval conjugate_domain(const LossSpec& loss) {
  switch (loss.family()) {
    case LossFamily::SmoothHingeG:
    case LossFamily::SmoothHingeM:
    case LossFamily::Logistic: return {-1.0, 0.0};
    case LossFamily::Exponential: return {-kInf, 0.0};
    case LossFamily::LeastSquares: return {-kInf, kInf};
    case LossFamily::SmoothAbsolute: {
      const double half = 0.5 * std::numbers::pi * abs_scale(loss);
      return {-half, half};
    }
    case LossFamily::SmoothReLU: return {0.0, 1.0};
    case LossFamily::Custom: {
      const GeneratorPair& gen = *loss.generator();
      if (!gen.inverse_bracket) {
        throw Unsupported("custom loss has no inverse bracket; conjugate domain unknown");
      }
      return {-gen.phi_cap(gen.inverse_bracket->upper), -gen.phi_cap(gen.inverse_bracket->lower)};
    }
    default:
      throw Unsupported(std::string("no conjugate domain for ") +
                        std::string(family_name(loss.family())));
  }
}

double conjugate(const LossSpec& loss, double beta) {
  const double theta = loss.theta();
  const double sigma = loss.sigma();
  if (loss.family() == LossFamily::Custom && !loss.generator()->inverse_bracket) {
    const GeneratorPair& gen = *loss.generator();
    if (!gen.phi_cap_inverse) throw Unsupported("custom loss has neither inverse nor bracket");
    const double v = gen.phi_cap_inverse(-beta);
    if (!std::isfinite(v)) throw OutOfDomain("beta outside the range of -Phi_c");
    return beta * theta - gen.phi_low(v) * sigma;
  }
  const Interval domain = conjugate_domain(loss);
  if (!domain.contains(beta)) {
    std::ostringstream msg;
    msg << "beta=" << beta << " outside conjugate domain (" << domain.lower << ", "
        << domain.upper << ")";
    throw OutOfDomain(msg.str());
  }
  switch (loss.family()) {
    case LossFamily::SmoothHingeG: {
      // -beta > 1/2: invert through 1 + beta to keep the upper tail exact.
      const double v = beta >= -0.5 ? normal::quantile(-beta) : -normal::quantile(1.0 + beta);
      return beta * theta - normal::pdf(v) * sigma;
    }
    case LossFamily::SmoothHingeM:
      return beta * theta - sigma * std::sqrt(-beta * (1.0 + beta));
    case LossFamily::Logistic:
      return beta * theta - sigma * (beta * std::log(-beta) - (1.0 + beta) * std::log1p(beta));
    case LossFamily::Exponential:
      return beta * theta + sigma * beta * (1.0 - std::log(-beta));
    case LossFamily::LeastSquares:
      return beta * theta + 0.5 * beta * beta;
    case LossFamily::SmoothAbsolute: {
      const double c = abs_scale(loss);
      const double b = beta / c;
      return c * (b * theta - sigma * std::log(std::cos(b)));
    }
    case LossFamily::SmoothReLU: {
      const double v = beta <= 0.5 ? normal::quantile(beta) : -normal::quantile(1.0 - beta);
      return beta * theta - normal::pdf(v) * sigma;
    }
    case LossFamily::Custom: {
      const GeneratorPair& gen = *loss.generator();
      const double v = detail::invert_rate(gen, -beta);
      return beta * theta - gen.phi_low(v) * sigma;
    }
    default: break;
  }
  throw Unsupported("conjugate not available");
}

double hinge_gap_bound(const LossSpec& loss) {
  if (loss.theta() != 1.0) throw Unsupported("hinge gap bound requires theta = 1");
  switch (loss.family()) {
    case LossFamily::SmoothHingeG: return loss.sigma() * normal::kInvSqrt2Pi;
    case LossFamily::SmoothHingeM: return 0.5 * loss.sigma();
    default:
      throw Unsupported("hinge gap bound is defined for smooth-hinge-g and smooth-hinge-m only");
  }
}

CurvatureCertificate curvature_bounds(const LossSpec& loss) {
  const double s = loss.sigma();
  switch (loss.family()) {
    case LossFamily::SmoothHingeG:
    case LossFamily::SmoothReLU: return {0.0, normal::kInvSqrt2Pi / s};
    case LossFamily::SmoothHingeM: return {0.0, 0.5 / s};
    case LossFamily::Logistic: return {0.0, 0.25 / s};
    case LossFamily::Exponential: return {0.0, kInf};
    case LossFamily::LeastSquares: return {1.0, 1.0};
    case LossFamily::SmoothAbsolute: return {0.0, abs_scale(loss) / s};
    case LossFamily::Custom: return detail::scan_curvature(*loss.generator(), s);
    default:
      throw Unsupported(std::string("curvature bounds not defined for ") +
                        std::string(family_name(loss.family())));
  }
}

bool is_calibrated(const LossSpec& loss) { return grad(loss, 0.0) < 0.0; }

}  // namespace smoothsvm
