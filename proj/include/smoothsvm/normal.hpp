#pragma once

namespace smoothsvm::normal {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;

/// Standard normal density.
double pdf(double v) noexcept;

/// Standard normal CDF, evaluated through erfc so both tails keep full
/// relative precision.
double cdf(double v) noexcept;

/// Inverse of cdf on (0, 1). A rational first guess is polished with
/// Halley steps until the residual is below 1e-12 relative.
/// Returns -inf / +inf at 0 / 1 and NaN outside [0, 1].
double quantile(double p) noexcept;

}  // namespace smoothsvm::normal
