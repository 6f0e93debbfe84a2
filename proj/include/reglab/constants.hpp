#pragma once

#include <cmath>
#include <numbers>

namespace reglab {

/// Volume b_n of the unit ball in R^n.
inline double ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Surface area n b_n of the unit sphere S^{n-1}.
inline double sphere_area(int n) { return n * ball_volume(n); }

/// Outer radius exp(-2) of the domain on which the singular maps live.
inline const double kOmegaRadius = std::exp(-2.0);

}  // namespace reglab
