#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reglab/field.hpp"
#include "reglab/quadrature.hpp"
#include "reglab/rearrange.hpp"

namespace reglab {

/// Least-squares line through (log r, log value).
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the log residuals
  bool clean = true;      // residual <= 0.1
};

/// Throws EmptyInput with fewer than two positive points.
LogLogFit fit_log_log(std::span<const double> radii, std::span<const double> values);

struct ScanReport {
  std::string quantity;
  std::vector<double> center;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> errors;
  /// Named auxiliary series of the same length as `radii`.
  std::map<std::string, std::vector<double>> series;
  /// Named scalars (e.g. alpha0, theta).
  std::map<std::string, double> scalars;
  std::optional<LogLogFit> fit;
};

struct MorreyResult {
  double value = 0.0;  // +inf when the integral diverges
  double error = 0.0;
  Verdict verdict = Verdict::Converged;
  /// r^{p-n} times the integral over the decades r 10^{-k-1} <= |x| <= r 10^{-k}
  /// (centred radial fields only).
  std::vector<double> decade_increments;
};

/// r^{p-n} int_{B_r(x0)} |grad u|^p. Polynomial fields need an even integer p
/// and are integrated exactly.
MorreyResult morrey_subnorm(const FieldSpec& field, std::span<const double> x0, double r,
                            double p, double tol = 1e-10, int decades = 6);

struct DecayScanConfig {
  enum class Norm { Morrey, Lorentz, Oscillation };

  std::vector<double> center;  // empty means the origin
  double r0 = 0.1;
  double theta = 0.5;
  int count = 8;
  Norm norm = Norm::Lorentz;
  double p = 0.0;  // 0 selects n (Lorentz, Morrey)
  double q = std::numeric_limits<double>::infinity();
  bool fit = true;
  /// Adds ||hess u||_{L^{n/2,inf}} to the Lorentz values.
  bool paired = false;
  std::size_t samples = 1 << 14;  // off-centre and polynomial balls
  std::uint64_t seed = 0;

  std::vector<double> radii() const;
};

std::string to_string(DecayScanConfig::Norm norm);
DecayScanConfig::Norm decay_norm_from_string(const std::string& name);

/// Norms on the balls B_{theta^l r0}(center). The report carries
/// alpha0 = log 2 / log(1/theta) and whether each step at least halved the
/// value ("halving").
ScanReport lorentz_ball_decay(const FieldSpec& field, const DecayScanConfig& config);

/// Largest oscillation of a component over B_r(center), from exact ranges of
/// the radial profiles.
ScanReport oscillation_scan(const FieldSpec& field, std::span<const double> center,
                            std::span<const double> radii);

enum class Membership { Member, NotMember, Inconclusive };
std::string to_string(Membership m);

struct MembershipComponent {
  std::string name;  // "|u|^p", "|grad u|^p", "|grad u|^2p", "|hess u|^p"
  double value = 0.0;
  Verdict verdict = Verdict::Converged;
  std::vector<DyadicIncrement> increments;
};

struct MembershipVerdict {
  int k = 1;
  double p = 0.0;
  Membership verdict = Membership::Member;
  std::vector<MembershipComponent> components;
  /// Increment table of the first divergent component.
  std::vector<DyadicIncrement> increments;
};

/// Sobolev membership W^{k,p} of a centred radial field over its domain
/// ball. k = 2 also integrates |grad u|^{2p}.
MembershipVerdict sobolev_membership(const FieldSpec& field, int k, double p,
                                     double tol = 1e-12);

struct DecayConstantReport {
  double max_ratio = 0.0;
  double refined_max_ratio = 0.0;
  double relative_change = 0.0;
  bool stable = false;  // relative_change < 0.1
  std::size_t skipped = 0;  // fields with zero norm on B_1 (constants)
  std::vector<double> thetas;
  std::vector<std::vector<double>> centers;
  /// ratio[field][theta][center] at the base resolution, skipped fields
  /// omitted.
  std::vector<std::vector<std::vector<double>>> ratios;
};

/// max ||grad phi||_{L^{n,inf}(B_theta(x))} / (theta ||grad phi||_{L^{n,inf}(B_1)})
/// over corpus x thetas x centres; with `paired` the norms become
/// ||grad phi||_{L^{n,inf}} + ||hess phi||_{L^{n/2,inf}}. The scan is
/// repeated with twice as many sample points.
DecayConstantReport harmonic_decay_constant(std::span<const FieldSpec> corpus,
                                            std::span<const double> thetas,
                                            std::span<const std::vector<double>> centers,
                                            bool paired = false,
                                            std::size_t samples = 1 << 13,
                                            std::uint64_t seed = 0);

/// `count` deterministic centres in B_radius, the origin first.
std::vector<std::vector<double>> sample_centers(int n, std::size_t count, double radius,
                                                std::uint64_t seed);

}  // namespace reglab
