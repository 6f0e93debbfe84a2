#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "reglab/field.hpp"
#include "reglab/quadrature.hpp"

namespace reglab {

enum class SystemKind { SecondOrderSphere, FourthOrderLogLog, FourthOrderSinLog };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& name);

/// One of the explicit two-component systems with quadratic gradient growth.
struct SystemSpec {
  SystemKind kind;
  int order;

  static SystemSpec second_order_sphere() { return {SystemKind::SecondOrderSphere, 2}; }
  static SystemSpec fourth_order_loglog() { return {SystemKind::FourthOrderLogLog, 4}; }
  static SystemSpec fourth_order_sinlog() { return {SystemKind::FourthOrderSinLog, 4}; }
  /// The system a catalog family solves. Throws FamilyMismatch.
  static SystemSpec for_family(Family family);

  /// Family whose fields this system is checked against.
  Family family() const;
};

/// Pointwise ingredients of a radial two-component field at one radius.
struct RadialState {
  double r = 0.0;
  std::array<double, 2> u{};
  std::array<double, 2> lap{};
  std::array<double, 2> bilap{};
  double grad2 = 0.0;   // |grad u|^2
  double hess = 0.0;    // |hess u|
};

RadialState radial_state(const FieldSpec& field, double r, int order);

/// Right-hand side Q (order 2) or Q1 (order 4) of the system at a state,
/// together with the largest magnitude among its additive terms.
struct SystemRhs {
  std::array<double, 2> value{};
  double term_scale = 0.0;
};
SystemRhs system_rhs(const SystemSpec& system, const RadialState& s);

struct ResidualReport {
  std::string family;
  std::string system;
  int n = 0;
  std::vector<double> radii;
  std::vector<double> residual_abs;
  std::vector<double> residual_rel;  // NaN where flagged
  std::vector<bool> flagged;         // term scale below 1e-30
  double max_rel = 0.0;
};

/// LHS - RHS from exact radial jets. Accepts the system's own family or a
/// Custom two-component radial field; throws FamilyMismatch otherwise.
ResidualReport pointwise_residual(const SystemSpec& system, const FieldSpec& field,
                                  std::span<const double> radii);

/// `count` log-spaced radii in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t count);

enum class GrowthVerdict { Finite, Divergent, NotApplicable };
std::string to_string(GrowthVerdict v);

struct GrowthReport {
  GrowthVerdict verdict = GrowthVerdict::NotApplicable;
  double C = 0.0;  // supremum of the ratios
  std::vector<double> radii;
  std::vector<double> ratios;  // NaN where the denominator vanishes
  /// Maximum ratio per decade of radius, smallest radii first.
  std::vector<double> decade_max;
};

/// sup |Q| / |grad u|^2 (order 2) or sup |Q1| / (|grad u|^4 + |grad u|^2
/// |hess u| + |hess u|^2) (order 4). The Q2 part vanishes for every catalog
/// system.
GrowthReport growth_constant(const SystemSpec& system, const FieldSpec& field,
                             std::span<const double> radii);

/// (1 - (|x - c| / rho)^2)^power, extended by zero.
struct Bump {
  std::vector<double> center;
  double radius = 1.0;
  double power = 5.0;

  bool centred() const;
  double offset() const;  // |center|
  ChainProfile profile() const;
};

struct WeakResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // max over components of |lhs - rhs|
  double relative = 0.0;  // residual / (|lhs| + |rhs|) at the worst component
  double bound = 0.0;     // quadrature error budget
  std::array<double, 2> lhs_components{};
  std::array<double, 2> rhs_components{};
};

/// Integration-by-parts identity for a radial field against a bump:
/// int grad u . grad phi = -int lap u phi (order 2) or
/// int lap u lap phi = int lap^2 u phi (order 4), per component.
/// Throws SupportError if the bump leaves the field's domain.
WeakResidual weak_residual(const FieldSpec& field, const Bump& bump, int order,
                           double tol = 1e-10);

/// Weak form of the system itself: int grad u . grad phi = -int Q phi
/// (order 2) or int lap u lap phi = int Q1 phi (order 4).
WeakResidual weak_system_residual(const SystemSpec& system, const FieldSpec& field,
                                  const Bump& bump, double tol = 1e-10);

/// Radial source with compact support in B_support.
struct RadialSource {
  std::function<double(double)> h;
  double support = 1.0;
};

/// Radial solution of lap v = -h (order 2) or lap^2 v = h inside the support
/// (order 4, two stacked order-2 solves), decaying at infinity (n >= 3).
/// The returned field carries the internal finite-difference check of the
/// inversion as parameter "inversion_residual". Throws NonIntegrableSource.
FieldSpec newton_potential(const RadialSource& source, int n, int operator_order);

/// Numeric radial profile of the order-2 potential, jets to order 2.
class PotentialProfile : public NumericProfile {
 public:
  PotentialProfile(RadialSource source, int n, std::size_t nodes = 400);

  RadialJet jet(double r, int order) const override;
  int max_order() const override { return 2; }
  std::string describe() const override;

  double mass(double r) const;  // int_{B_r} h / (n b_n)
  double value(double r) const;
  const RadialSource& source() const { return source_; }

 private:
  double mass_between(double a, double b) const;
  double potential_between(double a, double b) const;

  RadialSource source_;
  int n_;
  std::vector<double> nodes_;
  std::vector<double> mass_;
  std::vector<double> potential_;
};

/// Relative sup-norm of lap v + h over 20 radii in [0.05, 0.95] * support,
/// from a fourth-order finite-difference Laplacian of the profile values.
double inversion_residual(const RadialProfile& v, const RadialSource& source, int n);

/// (int_{B_theta} |grad phi|^2 + |hess phi|^2) / int_{B_1} |phi|^2 by exact
/// ball moments.
double caccioppoli_ratio(const FieldSpec& polynomial_field, double theta);
/// Largest ratio over a corpus.
double caccioppoli_constant(std::span<const FieldSpec> corpus, double theta);

}  // namespace reglab
