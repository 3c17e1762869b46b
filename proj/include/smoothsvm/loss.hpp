#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace smoothsvm {

/// Loss families. The first seven are instances of the generator framework
/// psi(a) = Phi_c(v) (theta - a) + phi_c(v) sigma with v = (theta - a) / sigma
/// (SmoothReLU through reflection); the next four are reference baselines.
enum class LossFamily {
  SmoothHingeG,
  SmoothHingeM,
  Logistic,
  Exponential,
  LeastSquares,
  SmoothAbsolute,
  SmoothReLU,
  Hinge,
  SquaredHinge,
  ShalevGamma,
  WangKh,
  Custom,
};

/// CLI name ("smooth-hinge-g", "sq-hinge", ...). Custom maps to "custom".
std::string_view family_name(LossFamily family) noexcept;

/// Inverse of family_name. Throws InvalidArgument on unknown names; "custom"
/// is rejected because a custom loss needs a generator.
LossFamily parse_family(std::string_view name);

/// Open interval (lower, upper); infinite endpoints allowed.
struct Interval {
  double lower;
  double upper;

  bool contains(double x) const noexcept { return x > lower && x < upper; }
};

struct CurvatureCertificate {
  double gamma_lower;  // strong convexity modulus
  double mu_upper;     // smoothness modulus, +inf when unbounded
};

using ScalarFunction = std::function<double(double)>;

/// The pair (Phi_c, phi_c) with Phi_c'. Must satisfy Phi_c'(v) v + phi_c'(v) = 0
/// and Phi_c' >= 0. Conjugates of custom losses need either an explicit
/// inverse of Phi_c or a bracket [lower, upper] in v to invert numerically.
struct GeneratorPair {
  ScalarFunction phi_cap;
  ScalarFunction phi_low;
  ScalarFunction phi_cap_deriv;
  ScalarFunction phi_cap_inverse;
  std::optional<Interval> inverse_bracket;
};

struct LossParams {
  std::optional<double> theta;  // family default when empty
  double sigma = 1.0;
  double gamma = 1.0;
  double bandwidth = 1.0;
  /// Scale SmoothAbsolute by 2/pi so its sigma -> 0 limit is |theta - a|.
  bool rescale_absolute = false;
};

/// Immutable loss description. Construct through `make` or the named
/// factories; parameters are validated once here.
class LossSpec {
 public:
  static LossSpec make(LossFamily family, const LossParams& params = {});

  static LossSpec smooth_hinge_g(double sigma, double theta = 1.0);
  static LossSpec smooth_hinge_m(double sigma, double theta = 1.0);
  static LossSpec logistic(double sigma = 1.0, double theta = 0.0);
  static LossSpec exponential(double sigma = 1.0, double theta = 0.0);
  static LossSpec least_squares(double sigma = 1.0, double theta = 1.0);
  static LossSpec smooth_absolute(double sigma, double theta = 1.0, bool rescale = false);
  static LossSpec smooth_relu(double sigma, double theta = 0.0);
  static LossSpec hinge(double theta = 1.0);
  static LossSpec squared_hinge(double theta = 1.0);
  static LossSpec shalev_gamma(double gamma, double theta = 1.0);
  static LossSpec wang_kh(double bandwidth, double theta = 1.0);

  LossFamily family() const noexcept { return family_; }
  double theta() const noexcept { return theta_; }
  double sigma() const noexcept { return sigma_; }
  double gamma() const noexcept { return gamma_; }
  double bandwidth() const noexcept { return bandwidth_; }
  bool rescale_absolute() const noexcept { return rescale_absolute_; }

  /// Only set for Custom losses.
  const GeneratorPair* generator() const noexcept { return generator_.get(); }

  /// Human-readable summary, e.g. "smooth-hinge-m(theta=1, sigma=0.125)".
  std::string describe() const;

 private:
  friend LossSpec from_generator(GeneratorPair gen, double theta, double sigma);

  LossSpec() = default;

  LossFamily family_ = LossFamily::Hinge;
  double theta_ = 1.0;
  double sigma_ = 1.0;
  double gamma_ = 1.0;
  double bandwidth_ = 1.0;
  bool rescale_absolute_ = false;
  std::shared_ptr<const GeneratorPair> generator_;
};

/// Default theta: 0 for Logistic, Exponential and SmoothReLU, 1 otherwise.
double default_theta(LossFamily family) noexcept;

/// True for families that use sigma.
bool uses_sigma(LossFamily family) noexcept;

/// Everything except Hinge has a first derivative.
bool is_differentiable(const LossSpec& loss) noexcept;

/// Families TRON accepts: convex with a (possibly generalized) second
/// derivative. Excludes Hinge and the non-convex WangKh.
bool supports_newton(const LossSpec& loss) noexcept;

double eval(const LossSpec& loss, double alpha);

/// Throws NonDifferentiable for Hinge.
double grad(const LossSpec& loss, double alpha);

/// Piecewise families return the right-limit at breakpoints. Throws
/// NonDifferentiable for Hinge.
double curvature(const LossSpec& loss, double alpha);

/// psi(alpha + delta) - psi(alpha) without cancellation for small delta.
double increment(const LossSpec& loss, double alpha, double delta);

void eval_batch(const LossSpec& loss, std::span<const double> alpha, std::span<double> out);
void grad_batch(const LossSpec& loss, std::span<const double> alpha, std::span<double> out);
void curvature_batch(const LossSpec& loss, std::span<const double> alpha, std::span<double> out);

/// Fenchel conjugate psi*(beta) = beta theta - phi_c(Phi_c^{-1}(-beta)) sigma.
/// Throws OutOfDomain outside conjugate_domain, Unsupported for the baselines.
double conjugate(const LossSpec& loss, double beta);

/// -R(Phi_c). Custom losses need an inverse bracket.
Interval conjugate_domain(const LossSpec& loss);

/// sup_a psi(a) - max(0, 1 - a) for the two smooth hinges at theta = 1.
double hinge_gap_bound(const LossSpec& loss);

/// inf / sup of psi''. Custom losses are scanned on v in [-20, 20] with step
/// 0.01, refined by golden section; a supremum on the scan edge reports +inf.
CurvatureCertificate curvature_bounds(const LossSpec& loss);

/// psi'(0) < 0.
bool is_calibrated(const LossSpec& loss);

/// Validates `gen` (see validate_generator) and wraps it as a Custom loss.
LossSpec from_generator(GeneratorPair gen, double theta, double sigma);

/// Throws InvalidGenerator if Phi_c' v + phi_c' = 0 or Phi_c' >= 0 fails on
/// the validation grid v in [-8, 8], step 0.05.
void validate_generator(const GeneratorPair& gen);

/// A smooth convex scalar function. `second_derivative` is optional; when
/// absent Phi_c' is obtained by finite differences.
struct SmoothFunction {
  ScalarFunction value;
  ScalarFunction derivative;
  ScalarFunction second_derivative;
};

/// Phi_c(v) = -psi'(theta - sigma v), phi_c(v) = psi(theta - sigma v) / sigma - Phi_c(v) v.
GeneratorPair generator_from_loss(const SmoothFunction& psi, double theta, double sigma);

/// The closed-form generator of a built-in framework family (G, M, Logistic,
/// Exponential, LeastSquares, SmoothAbsolute) or the stored one for Custom.
GeneratorPair generator_for(const LossSpec& loss);

}  // namespace smoothsvm
