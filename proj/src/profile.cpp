#include "reglab/profile.hpp"

#include <cmath>
#include <numbers>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_integer(double a) { return std::floor(a) == a; }

std::array<double, 5> power_derivatives(double x, double a) {
  std::array<double, 5> out{};
  double coef = 1.0;
  for (int k = 0; k < 5; ++k) {
    out[k] = coef == 0.0 ? 0.0 : coef * std::pow(x, a - k);
    coef *= (a - k);
  }
  return out;
}

// Largest value of sin over [lo, hi] (finite, width < 2 pi).
double sin_max(double lo, double hi) {
  const double peak = 0.5 * std::numbers::pi;
  const double k = std::ceil((lo - peak) / kTwoPi);
  if (peak + k * kTwoPi <= hi) return 1.0;
  return std::max(std::sin(lo), std::sin(hi));
}

double sin_min(double lo, double hi) {
  const double trough = -0.5 * std::numbers::pi;
  const double k = std::ceil((lo - trough) / kTwoPi);
  if (trough + k * kTwoPi <= hi) return -1.0;
  return std::min(std::sin(lo), std::sin(hi));
}

Interval sin_image(Interval x) {
  if (!std::isfinite(x.lo) || !std::isfinite(x.hi) || x.width() >= kTwoPi) {
    return {-1.0, 1.0};
  }
  return {sin_min(x.lo, x.hi), sin_max(x.lo, x.hi)};
}

}  // namespace

std::string to_string(ProfileOp::Kind kind) {
  switch (kind) {
    case ProfileOp::Kind::Log: return "log";
    case ProfileOp::Kind::Exp: return "exp";
    case ProfileOp::Kind::Sin: return "sin";
    case ProfileOp::Kind::Cos: return "cos";
    case ProfileOp::Kind::Pow: return "pow";
    case ProfileOp::Kind::Affine: return "affine";
  }
  return "unknown";
}

ProfileOp::Kind profile_op_kind_from_string(const std::string& name) {
  if (name == "log") return ProfileOp::Kind::Log;
  if (name == "exp") return ProfileOp::Kind::Exp;
  if (name == "sin") return ProfileOp::Kind::Sin;
  if (name == "cos") return ProfileOp::Kind::Cos;
  if (name == "pow") return ProfileOp::Kind::Pow;
  if (name == "affine") return ProfileOp::Kind::Affine;
  throw ConfigError("unknown profile op '" + name + "'");
}

Jet4 ProfileOp::apply(const Jet4& x) const {
  const double v = x[0];
  std::array<double, 5> outer{};
  switch (kind) {
    case Kind::Log: {
      if (!(v > 0.0)) throw DomainError("log of non-positive argument");
      const double inv = 1.0 / v;
      outer = {std::log(v), inv, -inv * inv, 2.0 * inv * inv * inv,
               -6.0 * inv * inv * inv * inv};
      break;
    }
    case Kind::Exp: {
      const double e = std::exp(v);
      outer = {e, e, e, e, e};
      break;
    }
    case Kind::Sin: {
      const double s = std::sin(v), c = std::cos(v);
      outer = {s, c, -s, -c, s};
      break;
    }
    case Kind::Cos: {
      const double s = std::sin(v), c = std::cos(v);
      outer = {c, -s, -c, s, c};
      break;
    }
    case Kind::Pow: {
      if (v < 0.0 && !is_integer(a)) {
        throw DomainError("non-integer power of negative argument");
      }
      outer = power_derivatives(v, a);
      break;
    }
    case Kind::Affine: {
      Jet4 out;
      out[0] = a * v + b;
      for (int k = 1; k < 5; ++k) out[k] = a * x[k];
      return out;
    }
  }
  return compose(outer, x);
}

Interval image(const ProfileOp& op, Interval x) {
  using K = ProfileOp::Kind;
  switch (op.kind) {
    case K::Log:
      if (x.lo < 0.0) throw DomainError("log of non-positive interval");
      return {std::log(x.lo), std::log(x.hi)};
    case K::Exp:
      return {std::exp(x.lo), std::exp(x.hi)};
    case K::Sin:
      return sin_image(x);
    case K::Cos:
      return sin_image({x.lo + 0.5 * std::numbers::pi,
                        x.hi + 0.5 * std::numbers::pi});
    case K::Affine: {
      if (op.a == 0.0) return {op.b, op.b};
      const double p = op.a * x.lo + op.b, q = op.a * x.hi + op.b;
      return op.a > 0.0 ? Interval{p, q} : Interval{q, p};
    }
    case K::Pow: {
      const double a = op.a;
      if (a == 0.0) return {1.0, 1.0};
      if (x.lo >= 0.0) {
        const double p = std::pow(x.lo, a), q = std::pow(x.hi, a);
        return a > 0.0 ? Interval{p, q} : Interval{q, p};
      }
      if (!is_integer(a)) {
        throw DomainError("non-integer power of negative interval");
      }
      const bool even = std::fmod(std::fabs(a), 2.0) == 0.0;
      if (x.hi >= 0.0) {
        // interval straddles zero
        if (a < 0.0) {
          return {even ? 0.0 : -std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
        }
        if (even) {
          return {0.0, std::pow(std::max(-x.lo, x.hi), a)};
        }
        return {std::pow(x.lo, a), std::pow(x.hi, a)};
      }
      const double p = std::pow(x.lo, a), q = std::pow(x.hi, a);
      return {std::min(p, q), std::max(p, q)};
    }
  }
  return x;
}

RadialJet RadialJet::from_log_jet(double log_r, const Jet4& g, int order) {
  RadialJet jet;
  jet.log_r = log_r;
  jet.r = std::exp(log_r);
  jet.order = order;
  // Stirling numbers of the first kind convert tau-derivatives to r^k g^(k).
  jet.scaled[0] = g[0];
  jet.scaled[1] = g[1];
  jet.scaled[2] = g[2] - g[1];
  jet.scaled[3] = g[3] - 3.0 * g[2] + 2.0 * g[1];
  jet.scaled[4] = g[4] - 6.0 * g[3] + 11.0 * g[2] - 6.0 * g[1];
  double rk = 1.0;
  for (int k = 0; k < 5; ++k) {
    if (k > order) {
      jet.scaled[k] = 0.0;
      jet.d[k] = 0.0;
      continue;
    }
    jet.d[k] = jet.scaled[k] / rk;
    rk *= jet.r;
  }
  return jet;
}

RadialJet RadialJet::from_radial(double r, const std::array<double, 5>& d,
                                 int order) {
  RadialJet jet;
  jet.r = r;
  jet.log_r = std::log(r);
  jet.order = order;
  double rk = 1.0;
  for (int k = 0; k < 5; ++k) {
    jet.d[k] = k <= order ? d[k] : 0.0;
    jet.scaled[k] = jet.d[k] * rk;
    rk *= r;
  }
  return jet;
}

Jet4 ChainProfile::eval_log(double log_r) const {
  Jet4 x = Jet4::variable(log_r);
  for (const auto& op : ops_) x = op.apply(x);
  return x;
}

Interval ChainProfile::range(Interval log_r) const {
  Interval x = log_r;
  for (const auto& op : ops_) x = image(op, x);
  return x;
}

ChainProfile ChainProfile::then(ProfileOp op) const {
  auto ops = ops_;
  ops.push_back(op);
  return ChainProfile(std::move(ops));
}

int RadialProfile::max_order() const {
  return is_chain() ? 4 : numeric()->max_order();
}

RadialJet RadialProfile::jet(double r, int order) const {
  if (order < 0 || order > max_order()) {
    throw OrderError("requested jet order " + std::to_string(order) +
                     " exceeds the profile's maximum " +
                     std::to_string(max_order()));
  }
  if (!(r > 0.0)) throw DomainError("radial profiles need r > 0");
  if (is_chain()) {
    return RadialJet::from_log_jet(std::log(r), chain().eval_log(std::log(r)),
                                   order);
  }
  return numeric()->jet(r, order);
}

RadialJet RadialProfile::jet_log(double log_r, int order) const {
  if (order < 0 || order > max_order()) {
    throw OrderError("requested jet order " + std::to_string(order) +
                     " exceeds the profile's maximum " +
                     std::to_string(max_order()));
  }
  if (is_chain()) {
    return RadialJet::from_log_jet(log_r, chain().eval_log(log_r), order);
  }
  RadialJet jet = numeric()->jet(std::exp(log_r), order);
  jet.log_r = log_r;
  return jet;
}

double radial_laplacian(const RadialJet& jet, int n) {
  if (jet.order < 2) throw OrderError("Laplacian needs a jet of order 2");
  return jet.d[2] + (n - 1) * jet.d[1] / jet.r;
}

double radial_bilaplacian(const RadialJet& jet, int n) {
  if (jet.order < 4) throw OrderError("bilaplacian needs a jet of order 4");
  const double r = jet.r;
  const double m = (n - 1.0) * (n - 3.0);
  return jet.d[4] + 2.0 * (n - 1) * jet.d[3] / r + m * jet.d[2] / (r * r) -
         m * jet.d[1] / (r * r * r);
}

double scaled_laplacian(const RadialJet& jet, int n) {
  if (jet.order < 2) throw OrderError("Laplacian needs a jet of order 2");
  return jet.scaled[2] + (n - 1) * jet.scaled[1];
}

double scaled_bilaplacian(const RadialJet& jet, int n) {
  if (jet.order < 4) throw OrderError("bilaplacian needs a jet of order 4");
  const double m = (n - 1.0) * (n - 3.0);
  return jet.scaled[4] + 2.0 * (n - 1) * jet.scaled[3] +
         m * (jet.scaled[2] - jet.scaled[1]);
}

namespace profiles {

ChainProfile power(double alpha, double coefficient) {
  std::vector<ProfileOp> ops{ProfileOp::affine(alpha, 0.0), ProfileOp::exp()};
  if (coefficient != 1.0) ops.push_back(ProfileOp::affine(coefficient, 0.0));
  return ChainProfile(std::move(ops));
}

ChainProfile sin_log_log() {
  return ChainProfile({ProfileOp::affine(-1.0, 0.0), ProfileOp::log(),
                       ProfileOp::sin()});
}

ChainProfile cos_log_log() {
  return ChainProfile({ProfileOp::affine(-1.0, 0.0), ProfileOp::log(),
                       ProfileOp::cos()});
}

ChainProfile sin_log(double factor) {
  return ChainProfile({ProfileOp::affine(factor, 0.0), ProfileOp::sin()});
}

ChainProfile cos_log(double factor) {
  return ChainProfile({ProfileOp::affine(factor, 0.0), ProfileOp::cos()});
}

ChainProfile polynomial_bump(double radius, double power) {
  return ChainProfile({ProfileOp::affine(2.0, -2.0 * std::log(radius)),
                       ProfileOp::exp(), ProfileOp::affine(-1.0, 1.0),
                       ProfileOp::pow(power)});
}

ChainProfile smooth_bump(double radius) {
  return ChainProfile({ProfileOp::affine(2.0, -2.0 * std::log(radius)),
                       ProfileOp::exp(), ProfileOp::affine(-1.0, 1.0),
                       ProfileOp::pow(-1.0), ProfileOp::affine(-1.0, 0.0),
                       ProfileOp::exp()});
}

}  // namespace profiles

}  // namespace reglab
