#pragma once

#include <functional>

#include "toeplitz/log_complex.hpp"

namespace toeplitz {

struct CircleMean {
  cplx value;
  double scale = 0.0;  // largest |f| seen on the nodes
  long nodes = 0;
};

inline constexpr long kCircleStartNodes = 64;
inline constexpr long kCircleMaxNodes = 1L << 20;

// Trapezoid mean of f over |t| = radius, doubling the node count (reusing old nodes)
// until successive estimates differ by at most rel_tol * |value| + abs_floor * scale.
// Throws AccuracyError past kCircleMaxNodes.
CircleMean circle_mean(const std::function<cplx(cplx)>& f, double radius,
                       double rel_tol = 1e-13, double abs_floor = 4e-15);

}  // namespace toeplitz
