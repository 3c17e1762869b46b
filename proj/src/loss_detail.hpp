#pragma once

#include <array>

#include "smoothsvm/loss.hpp"

namespace smoothsvm::detail {

/// 8-point Gauss-Legendre rule for the integral of f over [a, a + width]
/// (signed width). Taking the width directly keeps tiny intervals exact.
template <class F>
double gauss_legendre8(F&& f, double a, double width) {
  static constexpr std::array<double, 4> nodes = {0.1834346424956498, 0.5255324099163290,
                                                  0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> weights = {0.3626837833783620, 0.3137066458778873,
                                                    0.2223810344533745, 0.1012285362903763};
  const double half = 0.5 * width;
  const double mid = a + half;
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    sum += weights[k] * (f(mid - half * nodes[k]) + f(mid + half * nodes[k]));
  }
  return half * sum;
}

/// Solves Phi_c(v) = target by bisection on the generator's bracket, then
/// Newton polish. Throws OutOfDomain when target is not bracketed.
double invert_rate(const GeneratorPair& gen, double target);

CurvatureCertificate scan_curvature(const GeneratorPair& gen, double sigma);

}  // namespace smoothsvm::detail
