#pragma once

#include <array>
#include <cmath>

namespace reglab {

/// Value and first four derivatives of a scalar function of one variable.
struct Jet4 {
  std::array<double, 5> d{};

  double operator[](int k) const { return d[k]; }
  double& operator[](int k) { return d[k]; }

  static Jet4 variable(double x) { return Jet4{{x, 1.0, 0.0, 0.0, 0.0}}; }
  static Jet4 constant(double c) { return Jet4{{c, 0.0, 0.0, 0.0, 0.0}}; }
};

/// Chain rule to fourth order: derivatives of F(g(x)) from the derivatives
/// F0..F4 of the outer function at g(x) and the jet g of the inner one.
inline Jet4 compose(const std::array<double, 5>& outer, const Jet4& g) {
  const double g1 = g[1], g2 = g[2], g3 = g[3], g4 = g[4];
  Jet4 h;
  h[0] = outer[0];
  h[1] = outer[1] * g1;
  h[2] = outer[2] * g1 * g1 + outer[1] * g2;
  h[3] = outer[3] * g1 * g1 * g1 + 3.0 * outer[2] * g1 * g2 + outer[1] * g3;
  h[4] = outer[4] * g1 * g1 * g1 * g1 + 6.0 * outer[3] * g1 * g1 * g2 +
         outer[2] * (3.0 * g2 * g2 + 4.0 * g1 * g3) + outer[1] * g4;
  return h;
}

/// Leibniz rule to fourth order.
inline Jet4 multiply(const Jet4& a, const Jet4& b) {
  Jet4 h;
  h[0] = a[0] * b[0];
  h[1] = a[1] * b[0] + a[0] * b[1];
  h[2] = a[2] * b[0] + 2.0 * a[1] * b[1] + a[0] * b[2];
  h[3] = a[3] * b[0] + 3.0 * a[2] * b[1] + 3.0 * a[1] * b[2] + a[0] * b[3];
  h[4] = a[4] * b[0] + 4.0 * a[3] * b[1] + 6.0 * a[2] * b[2] +
         4.0 * a[1] * b[3] + a[0] * b[4];
  return h;
}

}  // namespace reglab
