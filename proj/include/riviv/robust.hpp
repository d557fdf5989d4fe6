#pragma once

#include <cmath>

#include "riviv/linalg.hpp"

namespace riviv {

/// Clipped identity: x inside [-c, c], sgn(x) * c outside.
inline double huber_rho(double x, double c) {
  return (std::fabs(x) <= c) ? x : std::copysign(c, x);
}

/// Derivative of huber_rho: 1 on [-c, c] (including the boundary), 0 outside.
inline double huber_rho_prime(double x, double c) {
  return (std::fabs(x) <= c) ? 1.0 : 0.0;
}

/// Median with the midpoint convention for even length. Throws on empty input.
double median(const Vec& xs);

/// Median absolute deviation about the median, without any consistency
/// rescaling (callers apply 1/0.6745 where a normal-scale estimate is meant).
double mad(const Vec& xs);

}  // namespace riviv
