#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace reglab {

enum class Verdict { Converged, Divergent, Inconclusive };

std::string to_string(Verdict v);

/// Thresholds of the dyadic-increment divergence test.
struct DivergenceOptions {
  int window = 5;
  int min_increments = 8;
  /// Increments decaying with every ratio <= this count as geometric.
  double geometric_ratio = 0.95;
  /// min/max over the window above this counts as "bounded below".
  double flat_ratio = 0.95;
  /// A flat window only signals divergence if the fitted power-law decay
  /// exponent of the increments does not exceed this (harmonic series = 1).
  double max_decay_exponent = 1.05;
};

struct DivergenceVerdict {
  Verdict verdict = Verdict::Inconclusive;
  double max_ratio = 0.0;
  double decay_exponent = 0.0;
  double tail_bound = 0.0;  // geometric tail bound when Converged
  std::string description;
};

/// Classifies a sequence of dyadic-annulus increments. `tail_target` is the
/// absolute size below which a geometric tail bound certifies convergence.
DivergenceVerdict detect_divergence(std::span<const double> increments,
                                    double tail_target,
                                    const DivergenceOptions& options = {});

struct QuadratureOptions {
  double tol = 1e-10;      // relative
  double abs_tol = 0.0;    // absolute floor
  std::size_t max_panels = std::size_t{1} << 20;
  /// Panel budget for the compactified tail at the origin.
  std::size_t max_tail_panels = std::size_t{1} << 16;
  /// Dyadic annuli examined before falling back to the compactified tail.
  int max_dyadic = 64;
  DivergenceOptions divergence{};
};

/// One dyadic annulus [inner, outer] with outer = 2 inner.
struct DyadicIncrement {
  int k = 0;
  double inner = 0.0;
  double outer = 0.0;
  double increment = 0.0;
  double partial_sum = 0.0;
};

struct QuadratureResult {
  Verdict verdict = Verdict::Converged;
  double value = 0.0;  // NaN when Divergent
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
  std::vector<DyadicIncrement> increments;
  std::string growth;  // description of the divergence pattern

  bool converged() const { return verdict == Verdict::Converged; }
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// Throws ToleranceNotMet when the panel budget runs out.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options = {});

/// Same, but returns the best estimate instead of throwing when the budget
/// is exhausted (verdict Inconclusive).
QuadratureResult integrate_nothrow(const std::function<double(double)>& f,
                                   double a, double b,
                                   const QuadratureOptions& options = {});

/// Radial integrand h(|x|). The log-radius form w(tau) = h(e^tau) e^{n tau}
/// lets singular integrands be integrated down to r -> 0 without underflow.
struct RadialIntegrand {
  std::function<double(double)> at_radius;
  std::function<double(double)> at_log_radius;

  static RadialIntegrand from_radius(std::function<double(double)> h, int n);
  static RadialIntegrand from_log_radius(std::function<double(double)> w);

  double weighted(double log_r) const { return at_log_radius(log_r); }
};

/// Integral of h(|x|) over the annulus a <= |x| <= b in R^n, i.e.
/// int_a^b h(r) n b_n r^{n-1} dr. With a = 0 the origin is approached along
/// dyadic annuli [2^{-k-1} b, 2^{-k} b]; the increment table is returned and
/// a Divergent verdict is reported instead of a value when it signals
/// divergence.
QuadratureResult integrate_radial(const RadialIntegrand& h, double a, double b,
                                  int n, const QuadratureOptions& options = {});

/// Fraction of the sphere |y| = rho lying inside B_r(x0), |x0| = d.
double cap_fraction(int n, double rho, double d, double r);

/// Integral of h(|y|) over the ball B_r(x0) with |x0| = d.
QuadratureResult integrate_offcenter_ball(const RadialIntegrand& h, double d,
                                          double r, int n,
                                          const QuadratureOptions& options = {});

/// Mean over the sphere |y| = rho of F(rho, cos theta), theta measured from a
/// fixed axis, restricted to cos theta >= cos_min (F taken as zero elsewhere).
double sphere_mean(const std::function<double(double, double)>& F, double rho,
                   int n, double cos_min, double tol = 1e-12);

/// Pairwise summation of values in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace reglab
