#pragma once

#include <array>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "reglab/jet.hpp"

namespace reglab {

/// Elementary step of a radial composition chain.
struct ProfileOp {
  enum class Kind { Log, Exp, Sin, Cos, Pow, Affine };
  Kind kind;
  double a = 0.0;  // Pow: exponent; Affine: slope
  double b = 0.0;  // Affine: offset

  static ProfileOp log() { return {Kind::Log}; }
  static ProfileOp exp() { return {Kind::Exp}; }
  static ProfileOp sin() { return {Kind::Sin}; }
  static ProfileOp cos() { return {Kind::Cos}; }
  static ProfileOp pow(double exponent) { return {Kind::Pow, exponent}; }
  static ProfileOp affine(double slope, double offset) {
    return {Kind::Affine, slope, offset};
  }

  Jet4 apply(const Jet4& x) const;
  friend bool operator==(const ProfileOp&, const ProfileOp&) = default;
};

std::string to_string(ProfileOp::Kind kind);
ProfileOp::Kind profile_op_kind_from_string(const std::string& name);

/// Closed interval on the extended real line.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double width() const { return hi - lo; }
};

/// Exact image of an interval under one chain step.
Interval image(const ProfileOp& op, Interval x);

/// Radial derivatives of a profile g at radius r.
///
/// `d[k]` is g^{(k)}(r). `scaled[k]` is r^k g^{(k)}(r), which stays finite
/// for the scale-covariant singular profiles even when r underflows; the
/// quadrature paths use it so that integrals can be taken down to r -> 0
/// in log-radius.
struct RadialJet {
  double r = 0.0;
  double log_r = 0.0;
  int order = 0;
  std::array<double, 5> d{};
  std::array<double, 5> scaled{};

  /// Builds the jet from derivatives with respect to tau = log r.
  static RadialJet from_log_jet(double log_r, const Jet4& g_tau, int order);
  /// Builds the jet from plain radial derivatives.
  static RadialJet from_radial(double r, const std::array<double, 5>& d,
                               int order);
};

/// Numerically defined radial profile (e.g. a Newton potential).
class NumericProfile {
 public:
  virtual ~NumericProfile() = default;
  virtual RadialJet jet(double r, int order) const = 0;
  virtual int max_order() const = 0;
  virtual std::string describe() const = 0;
};

/// Composition chain in tau = log r: g(r) = op_k(...op_1(log r)).
class ChainProfile {
 public:
  ChainProfile() = default;
  explicit ChainProfile(std::vector<ProfileOp> ops) : ops_(std::move(ops)) {}

  const std::vector<ProfileOp>& ops() const { return ops_; }
  Jet4 eval_log(double log_r) const;
  /// Range of g over radii r with log r in `log_r`.
  Interval range(Interval log_r) const;

  ChainProfile then(ProfileOp op) const;

 private:
  std::vector<ProfileOp> ops_;
};

/// Radial profile: either a closed-form chain or a numeric profile.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(ChainProfile chain) : impl_(std::move(chain)) {}
  RadialProfile(std::shared_ptr<const NumericProfile> numeric)
      : impl_(std::move(numeric)) {}

  bool is_chain() const { return std::holds_alternative<ChainProfile>(impl_); }
  const ChainProfile& chain() const { return std::get<ChainProfile>(impl_); }
  const std::shared_ptr<const NumericProfile>& numeric() const {
    return std::get<std::shared_ptr<const NumericProfile>>(impl_);
  }

  int max_order() const;
  RadialJet jet(double r, int order) const;
  RadialJet jet_log(double log_r, int order) const;
  double value(double r) const { return jet(r, 0).d[0]; }

 private:
  std::variant<ChainProfile, std::shared_ptr<const NumericProfile>> impl_;
};

/// Radial Laplacian g'' + (n-1) g'/r from a jet of order >= 2.
double radial_laplacian(const RadialJet& jet, int n);
/// Radial bilaplacian from a jet of order 4.
double radial_bilaplacian(const RadialJet& jet, int n);
/// r^2 times the radial Laplacian, evaluated from the scaled jet.
double scaled_laplacian(const RadialJet& jet, int n);
/// r^4 times the radial bilaplacian, evaluated from the scaled jet.
double scaled_bilaplacian(const RadialJet& jet, int n);

namespace profiles {

/// c r^alpha.
ChainProfile power(double alpha, double coefficient = 1.0);
/// sin(log(log(1/r))) and its cosine partner.
ChainProfile sin_log_log();
ChainProfile cos_log_log();
/// sin(factor log r) and cos(factor log r).
ChainProfile sin_log(double factor);
ChainProfile cos_log(double factor);
/// (1 - (r/radius)^2)^power inside the support.
ChainProfile polynomial_bump(double radius, double power);
/// exp(-1/(1 - (r/radius)^2)) inside the support.
ChainProfile smooth_bump(double radius);

}  // namespace profiles

}  // namespace reglab
