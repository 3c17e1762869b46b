#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "loss_detail.hpp"
#include "smoothsvm/errors.hpp"
#include "smoothsvm/loss.hpp"
#include "smoothsvm/normal.hpp"

namespace smoothsvm {

namespace {

// Five-point central difference.
double derivative5(const ScalarFunction& f, double v, double h) {
  return (f(v - 2.0 * h) - 8.0 * f(v - h) + 8.0 * f(v + h) - f(v + 2.0 * h)) / (12.0 * h);
}

double golden_section(const ScalarFunction& f, double lo, double hi, bool maximize) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  auto score = [&](double x) { return maximize ? f(x) : -f(x); };
  double a = lo, b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = score(c), fd = score(d);
  for (int iter = 0; iter < 80 && b - a > 1e-12; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = score(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = score(d);
    }
  }
  return f(0.5 * (a + b));
}

}  // namespace

namespace detail {

double invert_rate(const GeneratorPair& gen, double target) {
  if (!gen.inverse_bracket) {
    if (!gen.phi_cap_inverse) throw Unsupported("custom loss has neither inverse nor bracket");
    return gen.phi_cap_inverse(target);
  }
  double lo = gen.inverse_bracket->lower;
  double hi = gen.inverse_bracket->upper;
  if (!(gen.phi_cap(lo) <= target && target <= gen.phi_cap(hi))) {
    throw OutOfDomain("target rate not bracketed by the generator's inverse bracket");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
      break;
    }
    (gen.phi_cap(mid) < target ? lo : hi) = mid;
  }
  double v = 0.5 * (lo + hi);
  for (int iter = 0; iter < 3; ++iter) {
    const double slope = gen.phi_cap_deriv(v);
    if (!(slope > 0.0)) break;
    const double next = v - (gen.phi_cap(v) - target) / slope;
    if (!(next >= lo && next <= hi)) break;
    v = next;
  }
  return v;
}

CurvatureCertificate scan_curvature(const GeneratorPair& gen, double sigma) {
  constexpr double lo = -20.0, step = 0.01;
  constexpr int count = 4001;
  int imin = 0, imax = 0;
  double fmin = gen.phi_cap_deriv(lo), fmax = fmin;
  for (int i = 1; i < count; ++i) {
    const double f = gen.phi_cap_deriv(lo + i * step);
    if (f < fmin) fmin = f, imin = i;
    if (f > fmax) fmax = f, imax = i;
  }
  double mu = std::numeric_limits<double>::infinity();
  if (imax != 0 && imax != count - 1) {
    const double c = lo + imax * step;
    mu = std::max(fmax, golden_section(gen.phi_cap_deriv, c - step, c + step, true)) / sigma;
  }
  double inf_value = fmin;
  if (imin != 0 && imin != count - 1) {
    const double c = lo + imin * step;
    inf_value = std::min(fmin, golden_section(gen.phi_cap_deriv, c - step, c + step, false));
  }
  for (double probe : {-1e6, -1e3, 1e3, 1e6}) {
    const double f = gen.phi_cap_deriv(probe);
    if (std::isfinite(f)) inf_value = std::min(inf_value, f);
  }
  return {std::max(0.0, inf_value) / sigma, mu};
}

}  // namespace detail

void validate_generator(const GeneratorPair& gen) {
  if (!gen.phi_cap || !gen.phi_low || !gen.phi_cap_deriv) {
    throw InvalidGenerator("generator needs Phi_c, phi_c and Phi_c'");
  }
  for (int i = 0; i <= 320; ++i) {
    const double v = -8.0 + 0.05 * i;
    const double slope = gen.phi_cap_deriv(v);
    if (!(slope >= -1e-12)) {
      std::ostringstream msg;
      msg << "Phi_c' < 0 at v=" << v << " (" << slope << ")";
      throw InvalidGenerator(msg.str());
    }
    const double h = 1e-3 * std::max(1.0, std::abs(v));
    const double low_slope = derivative5(gen.phi_low, v, h);
    const double residual = slope * v + low_slope;
    const double scale = std::max({1.0, std::abs(slope * v), std::abs(gen.phi_low(v))});
    if (!(std::abs(residual) <= 1e-8 * scale)) {
      std::ostringstream msg;
      msg << "Phi_c'(v) v + phi_c'(v) = " << residual << " at v=" << v;
      throw InvalidGenerator(msg.str());
    }
  }
}

LossSpec from_generator(GeneratorPair gen, double theta, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("sigma must be positive and finite");
  }
  if (!std::isfinite(theta)) throw InvalidArgument("theta must be finite");
  validate_generator(gen);
  LossSpec spec;
  spec.family_ = LossFamily::Custom;
  spec.theta_ = theta;
  spec.sigma_ = sigma;
  spec.generator_ = std::make_shared<const GeneratorPair>(std::move(gen));
  return spec;
}

GeneratorPair generator_from_loss(const SmoothFunction& psi, double theta, double sigma) {
  GeneratorPair gen;
  gen.phi_cap = [psi, theta, sigma](double v) { return -psi.derivative(theta - sigma * v); };
  gen.phi_low = [psi, theta, sigma](double v) {
    const double rate = -psi.derivative(theta - sigma * v);
    return psi.value(theta - sigma * v) / sigma - rate * v;
  };
  if (psi.second_derivative) {
    gen.phi_cap_deriv = [psi, theta, sigma](double v) {
      return sigma * psi.second_derivative(theta - sigma * v);
    };
  } else {
    ScalarFunction rate = gen.phi_cap;
    gen.phi_cap_deriv = [rate](double v) {
      return derivative5(rate, v, 1e-4 * std::max(1.0, std::abs(v)));
    };
  }
  return gen;
}

GeneratorPair generator_for(const LossSpec& loss) {
  GeneratorPair gen;
  const double sigma = loss.sigma();
  switch (loss.family()) {
    case LossFamily::SmoothHingeG:
      gen.phi_cap = [](double v) { return normal::cdf(v); };
      gen.phi_low = [](double v) { return normal::pdf(v); };
      gen.phi_cap_deriv = [](double v) { return normal::pdf(v); };
      gen.phi_cap_inverse = [](double p) { return normal::quantile(p); };
      break;
    case LossFamily::SmoothHingeM:
      gen.phi_cap = [](double v) {
        const double r = std::hypot(1.0, v);
        return v >= 0.0 ? 0.5 * (1.0 + v / r) : 0.5 / (r * (r - v));
      };
      gen.phi_low = [](double v) { return 0.5 / std::hypot(1.0, v); };
      gen.phi_cap_deriv = [](double v) {
        const double r = std::hypot(1.0, v);
        return 0.5 / (r * r * r);
      };
      gen.phi_cap_inverse = [](double p) {
        const double t = 2.0 * p - 1.0;
        return t / std::sqrt(1.0 - t * t);
      };
      break;
    case LossFamily::Logistic:
      gen.phi_cap = [](double v) {
        return v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
      };
      gen.phi_low = [cap = gen.phi_cap](double v) {
        return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v))) - v * cap(v);
      };
      gen.phi_cap_deriv = [cap = gen.phi_cap](double v) { return cap(v) * cap(-v); };
      gen.phi_cap_inverse = [](double p) { return std::log(p / (1.0 - p)); };
      break;
    case LossFamily::Exponential:
      gen.phi_cap = [](double v) { return std::exp(v); };
      gen.phi_low = [](double v) { return (1.0 - v) * std::exp(v); };
      gen.phi_cap_deriv = [](double v) { return std::exp(v); };
      gen.phi_cap_inverse = [](double p) { return std::log(p); };
      break;
    case LossFamily::LeastSquares:
      gen.phi_cap = [sigma](double v) { return sigma * v; };
      gen.phi_low = [sigma](double v) { return -0.5 * sigma * v * v; };
      gen.phi_cap_deriv = [sigma](double) { return sigma; };
      gen.phi_cap_inverse = [sigma](double p) { return p / sigma; };
      break;
    case LossFamily::SmoothAbsolute: {
      const double c = loss.rescale_absolute() ? 2.0 / std::numbers::pi : 1.0;
      gen.phi_cap = [c](double v) { return c * std::atan(v); };
      gen.phi_low = [c](double v) { return -c * std::log(std::hypot(1.0, v)); };
      gen.phi_cap_deriv = [c](double v) { return c / (1.0 + v * v); };
      gen.phi_cap_inverse = [c](double p) { return std::tan(p / c); };
      break;
    }
    case LossFamily::Custom: return *loss.generator();
    default:
      throw Unsupported(std::string(family_name(loss.family())) +
                        " is not an instance of the generator framework");
  }
  return gen;
}

}  // namespace smoothsvm
