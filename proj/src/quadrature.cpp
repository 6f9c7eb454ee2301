#include "toeplitz/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toeplitz/errors.hpp"

namespace toeplitz {

CircleMean circle_mean(const std::function<cplx(cplx)>& f, double radius, double rel_tol,
                       double abs_floor) {
  if (!(radius > 0.0)) throw ParameterError("circle_mean: radius must be positive");
  long n = kCircleStartNodes;
  cplx sum = 0.0;
  double scale = 0.0;
  for (long k = 0; k < n; ++k) {
    const cplx v = f(std::polar(radius, 2.0 * std::numbers::pi * k / n));
    scale = std::max(scale, std::abs(v));
    sum += v;
  }
  cplx mean = sum / static_cast<double>(n);
  double change = 0.0;
  while (n < kCircleMaxNodes) {
    // New nodes sit halfway between the old ones.
    for (long k = 0; k < n; ++k) {
      const cplx v = f(std::polar(radius, std::numbers::pi * (2 * k + 1) / n));
      scale = std::max(scale, std::abs(v));
      sum += v;
    }
    n *= 2;
    const cplx next = sum / static_cast<double>(n);
    change = std::abs(next - mean);
    mean = next;
    if (change <= rel_tol * std::abs(mean) + abs_floor * scale) return {mean, scale, n};
  }
  throw AccuracyError("circle_mean: trapezoid rule did not settle", change);
}

}  // namespace toeplitz
