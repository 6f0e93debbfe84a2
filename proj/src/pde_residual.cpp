#include "reglab/pde_residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"

namespace reglab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
using GL = boost::math::quadrature::gauss<double, 10>;

void require_two_component_radial(const FieldSpec& field) {
  if (!field.is_radial() || field.K() != 2) {
    throw FamilyMismatch("the systems act on radial two-component fields");
  }
}

// State with every quantity multiplied by the power of r that makes it
// scale-free: lap by r^2, bilap by r^4, grad2 by r^2, hess by r^2.
RadialState scaled_state(const FieldSpec& field, double log_r, int order) {
  const auto jets = radial_jets_log(field, log_r, order);
  const int n = field.n();
  RadialState s;
  s.r = std::exp(log_r);
  double hess2 = 0.0;
  for (int c = 0; c < 2; ++c) {
    const RadialJet& j = jets[c];
    s.u[c] = j.d[0];
    if (order >= 1) s.grad2 += j.scaled[1] * j.scaled[1];
    if (order >= 2) {
      s.lap[c] = scaled_laplacian(j, n);
      hess2 += j.scaled[2] * j.scaled[2] + (n - 1) * j.scaled[1] * j.scaled[1];
    }
    if (order >= 4) s.bilap[c] = scaled_bilaplacian(j, n);
  }
  s.hess = std::sqrt(hess2);
  return s;
}

}  // namespace

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::SecondOrderSphere: return "second_order_sphere";
    case SystemKind::FourthOrderLogLog: return "fourth_order_loglog";
    case SystemKind::FourthOrderSinLog: return "fourth_order_sinlog";
  }
  return "";
}

SystemKind system_kind_from_string(const std::string& name) {
  for (SystemKind k : {SystemKind::SecondOrderSphere, SystemKind::FourthOrderLogLog,
                       SystemKind::FourthOrderSinLog}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown system '" + name + "'");
}

SystemSpec SystemSpec::for_family(Family family) {
  switch (family) {
    case Family::SinLogSecondOrder: return second_order_sphere();
    case Family::LogLog4D: return fourth_order_loglog();
    case Family::SinLogFourthOrder: return fourth_order_sinlog();
    default: break;
  }
  throw FamilyMismatch("no system is attached to family " + to_string(family));
}

Family SystemSpec::family() const {
  switch (kind) {
    case SystemKind::SecondOrderSphere: return Family::SinLogSecondOrder;
    case SystemKind::FourthOrderLogLog: return Family::LogLog4D;
    case SystemKind::FourthOrderSinLog: return Family::SinLogFourthOrder;
  }
  return Family::Custom;
}

RadialState radial_state(const FieldSpec& field, double r, int order) {
  require_two_component_radial(field);
  if (!(r > 0.0) || r < field.domain().r_min || r > field.domain().r_max) {
    throw DomainError("radius outside the field's domain");
  }
  RadialState s = scaled_state(field, std::log(r), order);
  const double r2 = r * r;
  for (int c = 0; c < 2; ++c) {
    s.lap[c] /= r2;
    s.bilap[c] /= r2 * r2;
  }
  s.grad2 /= r2;
  s.hess /= r2;
  return s;
}

SystemRhs system_rhs(const SystemSpec& system, const RadialState& s) {
  const double u1 = s.u[0], u2 = s.u[1];
  const double denom = 1.0 + u1 * u1 + u2 * u2;
  const double a1 = 2.0 * (u1 + u2) / denom;
  const double a2 = 2.0 * (u2 - u1) / denom;
  const double g2 = s.grad2;
  const double g4 = g2 * g2;
  SystemRhs out;
  switch (system.kind) {
    case SystemKind::SecondOrderSphere:
      out.value = {-a1 * g2, -a2 * g2};
      out.term_scale = std::max(std::fabs(a1 * g2), std::fabs(a2 * g2));
      break;
    case SystemKind::FourthOrderLogLog: {
      const double R1 = s.lap[0] + a1 * g2;
      const double R2 = s.lap[1] + a2 * g2;
      const double RR = R1 * R1 + R2 * R2;
      const double t1 = RR * a1, t2 = RR * a2;
      const double w1 = 20.0 * u1 / denom * g4, w2 = 20.0 * u2 / denom * g4;
      out.value = {t1 - w1, t2 - w2};
      out.term_scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(w1), std::fabs(w2)});
      break;
    }
    case SystemKind::FourthOrderSinLog: {
      const double R1 = s.lap[0] + a1 * g2;
      const double R2 = s.lap[1] + a2 * g2;
      const double RR = R1 * R1 + R2 * R2;
      const double t1 = RR * a1, t2 = RR * a2;
      const double w1 = 4.0 * u2 / denom * g4, w2 = -4.0 * u1 / denom * g4;
      const double c1 = (R2 - R1) * g2, c2 = -(R1 + R2) * g2;
      out.value = {t1 + w1 + c1, t2 + w2 + c2};
      out.term_scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(w1), std::fabs(w2),
                                 std::fabs(c1), std::fabs(c2)});
      break;
    }
  }
  return out;
}

namespace {

void check_system_field(const SystemSpec& system, const FieldSpec& field) {
  require_two_component_radial(field);
  if (field.family() != system.family() && field.family() != Family::Custom) {
    throw FamilyMismatch("system " + to_string(system.kind) + " does not apply to family " +
                         to_string(field.family()));
  }
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw ConfigError("log_spaced needs 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(count);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo : std::exp(a + (b - a) * i / (count - 1.0));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

ResidualReport pointwise_residual(const SystemSpec& system, const FieldSpec& field,
                                  std::span<const double> radii) {
  check_system_field(system, field);
  ResidualReport rep;
  rep.family = to_string(field.family());
  rep.system = to_string(system.kind);
  rep.n = field.n();
  for (double r : radii) {
    if (!(r > 0.0) || r < field.domain().r_min || r > field.domain().r_max) {
      throw DomainError("radius " + std::to_string(r) + " outside the field's domain");
    }
    const RadialState s = scaled_state(field, std::log(r), system.order);
    const SystemRhs q = system_rhs(system, s);
    const auto& lhs = system.order == 2 ? s.lap : s.bilap;
    const double e1 = lhs[0] - q.value[0], e2 = lhs[1] - q.value[1];
    const double scale = std::max({q.term_scale, std::fabs(lhs[0]), std::fabs(lhs[1])});
    const double rk = system.order == 2 ? r * r : r * r * r * r;
    rep.radii.push_back(r);
    rep.residual_abs.push_back(std::hypot(e1, e2) / rk);
    const bool flag = !(scale / rk > 1e-30);
    rep.flagged.push_back(flag);
    const double rel = flag ? kNaN : std::hypot(e1, e2) / scale;
    rep.residual_rel.push_back(rel);
    if (!flag) rep.max_rel = std::max(rep.max_rel, rel);
  }
  return rep;
}

std::string to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Finite: return "Finite";
    case GrowthVerdict::Divergent: return "Divergent";
    case GrowthVerdict::NotApplicable: return "NotApplicable";
  }
  return "";
}

GrowthReport growth_constant(const SystemSpec& system, const FieldSpec& field,
                             std::span<const double> radii) {
  require_two_component_radial(field);
  GrowthReport rep;
  std::map<int, double> decades;
  for (double r : radii) {
    const RadialState s = scaled_state(field, std::log(r), system.order);
    const SystemRhs q = system_rhs(system, s);
    const double num = std::hypot(q.value[0], q.value[1]);
    const double den = system.order == 2
                           ? s.grad2
                           : s.grad2 * s.grad2 + s.grad2 * s.hess + s.hess * s.hess;
    rep.radii.push_back(r);
    if (!(den > 1e-300)) {
      rep.ratios.push_back(kNaN);
      continue;
    }
    const double ratio = num / den;
    rep.ratios.push_back(ratio);
    rep.C = std::max(rep.C, ratio);
    const int decade = static_cast<int>(std::floor(std::log10(r) + 1e-12));
    auto [it, fresh] = decades.emplace(decade, ratio);
    if (!fresh) it->second = std::max(it->second, ratio);
  }
  if (decades.empty()) {
    rep.verdict = GrowthVerdict::NotApplicable;
    rep.C = kNaN;
    return rep;
  }
  for (const auto& [d, m] : decades) rep.decade_max.push_back(m);
  bool increasing_inward = rep.decade_max.size() >= 3;
  for (std::size_t i = 1; i < rep.decade_max.size(); ++i) {
    if (!(rep.decade_max[i - 1] > rep.decade_max[i])) increasing_inward = false;
  }
  if (increasing_inward && rep.decade_max.front() > 2.0 * rep.decade_max.back()) {
    rep.verdict = GrowthVerdict::Divergent;
  } else {
    rep.verdict = GrowthVerdict::Finite;
  }
  return rep;
}

bool Bump::centred() const {
  return std::all_of(center.begin(), center.end(), [](double c) { return c == 0.0; });
}

double Bump::offset() const {
  double s = 0.0;
  for (double c : center) s += c * c;
  return std::sqrt(s);
}

ChainProfile Bump::profile() const { return profiles::polynomial_bump(radius, power); }

namespace {

// Bump values at distance s from its centre: psi, psi'(s), lap phi.
struct BumpValues {
  double psi = 0.0;
  double dpsi = 0.0;
  double lap = 0.0;
};

BumpValues bump_values(const ChainProfile& chain, double radius, double s, int n) {
  BumpValues out;
  if (!(s < radius)) return out;
  if (s == 0.0) {
    // psi = (1 - s^2/R^2)^p: psi'(0) = 0, lap = -2 n p / R^2
    out.psi = 1.0;
    const double p = chain.ops().back().a;
    out.lap = -2.0 * n * p / (radius * radius);
    return out;
  }
  const RadialJet j = RadialJet::from_log_jet(std::log(s), chain.eval_log(std::log(s)), 2);
  out.psi = j.d[0];
  out.dpsi = j.d[1];
  out.lap = radial_laplacian(j, n);
  return out;
}

// int over supp(phi) of A(log rho) B(log rho, cos theta, s) rho^{-n} dy.
// A depends on the radius only and already carries the factor rho^n; B is
// the bump factor at distance s from the bump centre.
QuadratureResult bump_integral(const std::function<double(double)>& A,
                               const std::function<double(double, double, double)>& B,
                               const Bump& bump, int n, double tol) {
  const double d = bump.offset();
  const double R = bump.radius;
  QuadratureOptions opts;
  opts.tol = tol;
  if (d == 0.0) {
    const auto w = [&](double t) {
      const double a = A(t);
      return a == 0.0 ? 0.0 : a * B(t, 1.0, std::exp(t));
    };
    return integrate_radial(RadialIntegrand::from_log_radius(w), 0.0, R, n, opts);
  }
  const auto w = [&, d, R](double t) {
    const double rho = std::exp(t);
    const double cos_min = std::clamp((rho * rho + d * d - R * R) / (2.0 * rho * d), -1.0, 1.0);
    if (cos_min >= 1.0) return 0.0;
    const double a = A(t);
    if (a == 0.0) return 0.0;
    const auto F = [&](double, double c) {
      const double s2 = std::max(0.0, rho * rho + d * d - 2.0 * rho * d * c);
      return B(t, c, std::sqrt(s2));
    };
    return a * sphere_mean(F, rho, n, cos_min, 1e-13);
  };
  const RadialIntegrand wi = RadialIntegrand::from_log_radius(w);
  if (d < R) {
    QuadratureOptions half = opts;
    half.tol = tol / 2.0;
    QuadratureResult inner = integrate_radial(wi, 0.0, R - d, n, half);
    const QuadratureResult shell = integrate_radial(wi, R - d, R + d, n, half);
    inner.value += shell.value;
    inner.error_estimate += shell.error_estimate;
    inner.verdict = shell.converged() ? inner.verdict : shell.verdict;
    return inner;
  }
  return integrate_radial(wi, d - R, d + R, n, opts);
}

void check_support(const FieldSpec& field, const Bump& bump) {
  if (!bump.center.empty() && static_cast<int>(bump.center.size()) != field.n()) {
    throw DomainError("bump centre has the wrong dimension");
  }
  if (!(bump.radius > 0.0)) throw SupportError("bump radius must be positive");
  if (bump.offset() + bump.radius > field.domain().r_max * (1.0 + 1e-12)) {
    throw SupportError("bump support leaves the field's domain");
  }
}

// Pairing of one component of the field (or of the system right-hand side)
// against the bump. `which` selects the integrand.
enum class Pairing { GradGrad, LapPhi, LapLap, BilapPhi, QPhi };

// Radial factor of a pairing for component c, times rho^n.
double pairing_radial(const FieldSpec& field, const SystemSpec* system, Pairing which, int c,
                      double t) {
  const int n = field.n();
  switch (which) {
    case Pairing::GradGrad:
      return radial_jets_log(field, t, 1)[c].scaled[1] * std::exp((n - 1) * t);
    case Pairing::LapPhi:
    case Pairing::LapLap:
      return scaled_laplacian(radial_jets_log(field, t, 2)[c], n) * std::exp((n - 2) * t);
    case Pairing::BilapPhi:
      return scaled_bilaplacian(radial_jets_log(field, t, 4)[c], n) * std::exp((n - 4) * t);
    case Pairing::QPhi: {
      const SystemRhs q = system_rhs(*system, scaled_state(field, t, system->order));
      return q.value[c] * std::exp((n - system->order) * t);
    }
  }
  return 0.0;
}

// Bump factor of a pairing at distance s from the bump centre.
double pairing_bump(Pairing which, const ChainProfile& chain, const Bump& bump, int n,
                    double t, double cos_theta, double s) {
  const BumpValues b = bump_values(chain, bump.radius, s, n);
  switch (which) {
    case Pairing::GradGrad: {
      // grad u . grad phi = g'(rho) psi'(s) (rho - d cos) / s
      const double d = bump.offset();
      if (d == 0.0) return b.dpsi;
      if (!(s > 0.0)) return 0.0;
      return b.dpsi * (std::exp(t) - d * cos_theta) / s;
    }
    case Pairing::LapLap: return b.lap;
    default: return b.psi;
  }
}

WeakResidual weak_pairing(const FieldSpec& field, const SystemSpec* system, const Bump& bump,
                          int order, double tol) {
  if (!field.is_radial()) throw FamilyMismatch("weak residuals need a radial field");
  if (order != 2 && order != 4) throw OrderError("weak form order must be 2 or 4");
  check_support(field, bump);
  const ChainProfile chain = bump.profile();
  const Pairing left = order == 2 ? Pairing::GradGrad : Pairing::LapLap;
  const Pairing right = system ? Pairing::QPhi : (order == 2 ? Pairing::LapPhi : Pairing::BilapPhi);
  // order 2: int grad u . grad phi = -int (lap u or Q) phi
  const double sign = order == 2 ? -1.0 : 1.0;
  WeakResidual out;
  double worst = -1.0;
  const int K = std::min(field.K(), 2);
  for (int c = 0; c < K; ++c) {
    const int n = field.n();
    const auto al = [&](double t) { return pairing_radial(field, system, left, c, t); };
    const auto bl = [&](double t, double ct, double s) {
      return pairing_bump(left, chain, bump, n, t, ct, s);
    };
    const auto ar = [&](double t) { return pairing_radial(field, system, right, c, t); };
    const auto br = [&](double t, double ct, double s) {
      return pairing_bump(right, chain, bump, n, t, ct, s);
    };
    const QuadratureResult L = bump_integral(al, bl, bump, n, tol / 4.0);
    const QuadratureResult Rr = bump_integral(ar, br, bump, n, tol / 4.0);
    if (!L.converged() || !Rr.converged()) {
      throw ToleranceNotMet("weak-form integrals did not converge");
    }
    const double lhs = L.value, rhs = sign * Rr.value;
    out.lhs_components[c] = lhs;
    out.rhs_components[c] = rhs;
    const double res = std::fabs(lhs - rhs);
    const double denom = std::fabs(lhs) + std::fabs(rhs);
    const double rel = denom > 0.0 ? res / denom : 0.0;
    out.bound += L.error_estimate + Rr.error_estimate;
    if (rel > worst) {
      worst = rel;
      out.lhs = lhs;
      out.rhs = rhs;
      out.residual = res;
      out.relative = rel;
    }
  }
  return out;
}

}  // namespace

WeakResidual weak_residual(const FieldSpec& field, const Bump& bump, int order, double tol) {
  return weak_pairing(field, nullptr, bump, order, tol);
}

WeakResidual weak_system_residual(const SystemSpec& system, const FieldSpec& field,
                                  const Bump& bump, double tol) {
  check_system_field(system, field);
  return weak_pairing(field, &system, bump, system.order, tol);
}

PotentialProfile::PotentialProfile(RadialSource source, int n, std::size_t nodes)
    : source_(std::move(source)), n_(n) {
  if (n < 3) throw UnsupportedDimension("radial potentials need n >= 3");
  if (!(source_.support > 0.0) || !std::isfinite(source_.support)) {
    throw ConfigError("source support radius must be positive and finite");
  }
  const double R = source_.support;
  const auto h = source_.h;
  const auto abs_h = RadialIntegrand::from_radius([h](double r) { return std::fabs(h(r)); }, n);
  QuadratureOptions check;
  check.tol = 1e-8;
  try {
    const QuadratureResult q = integrate_radial(abs_h, 0.0, R, n, check);
    if (!q.converged()) {
      throw NonIntegrableSource("source is not integrable at the origin: " + q.growth);
    }
  } catch (const ToleranceNotMet& e) {
    throw NonIntegrableSource(std::string("source integrability undecided: ") + e.what());
  }

  const double lo = R * 1e-10;
  nodes_.resize(nodes + 1);
  for (std::size_t k = 0; k <= nodes; ++k) {
    nodes_[k] = lo * std::pow(R / lo, static_cast<double>(k) / nodes);
  }
  nodes_.back() = R;
  QuadratureOptions core;
  core.tol = 1e-13;
  const auto signed_h = RadialIntegrand::from_radius(h, n);
  mass_.assign(nodes + 1, 0.0);
  mass_[0] = integrate_radial(signed_h, 0.0, lo, n, core).value / sphere_area(n);
  for (std::size_t k = 1; k <= nodes; ++k) {
    mass_[k] = mass_[k - 1] + mass_between(nodes_[k - 1], nodes_[k]);
  }
  potential_.assign(nodes + 1, 0.0);
  potential_[nodes] = mass_[nodes] * std::pow(R, 2.0 - n) / (n - 2.0);
  for (std::size_t k = nodes; k-- > 0;) {
    potential_[k] = potential_[k + 1] + potential_between(nodes_[k], nodes_[k + 1]);
  }
}

double PotentialProfile::mass_between(double a, double b) const {
  const auto& h = source_.h;
  const int n = n_;
  return GL::integrate([&](double t) { return h(std::exp(t)) * std::exp(n * t); },
                       std::log(a), std::log(b));
}

double PotentialProfile::mass(double r) const {
  if (r >= source_.support) return mass_.back();
  if (r <= nodes_.front()) {
    QuadratureOptions core;
    core.tol = 1e-13;
    return integrate_radial(RadialIntegrand::from_radius(source_.h, n_), 0.0, r, n_, core).value /
           sphere_area(n_);
  }
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  const std::size_t k = (it - nodes_.begin()) - 1;
  return mass_[k] + mass_between(nodes_[k], r);
}

// int_a^b M(rho) rho^{1-n} d rho with a, b inside one node interval
double PotentialProfile::potential_between(double a, double b) const {
  const int n = n_;
  return GL::integrate([&](double t) { return mass(std::exp(t)) * std::exp((2 - n) * t); },
                       std::log(a), std::log(b));
}

double PotentialProfile::value(double r) const {
  if (!(r > 0.0)) throw DomainError("potential evaluated at r <= 0");
  const double R = source_.support;
  if (r >= R) return mass_.back() * std::pow(r, 2.0 - n_) / (n_ - 2.0);
  if (r < nodes_.front()) {
    QuadratureOptions o;
    o.tol = 1e-12;
    const auto f = [&](double t) { return mass(std::exp(t)) * std::exp((2 - n_) * t); };
    return potential_.front() + integrate(f, std::log(r), std::log(nodes_.front()), o).value;
  }
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  const std::size_t k = (it - nodes_.begin()) - 1;
  return potential_[k + 1] + potential_between(r, nodes_[k + 1]);
}

RadialJet PotentialProfile::jet(double r, int order) const {
  if (order < 0 || order > 2) throw OrderError("potential profiles carry jets to order 2");
  if (!(r > 0.0)) throw DomainError("potential evaluated at r <= 0");
  std::array<double, 5> d{};
  d[0] = value(r);
  if (order >= 1) {
    const double M = mass(r);
    d[1] = -M * std::pow(r, 1.0 - n_);
    if (order >= 2) {
      const double h = r <= source_.support ? source_.h(r) : 0.0;
      d[2] = (n_ - 1.0) * M * std::pow(r, -static_cast<double>(n_)) - h;
    }
  }
  return RadialJet::from_radial(r, d, order);
}

std::string PotentialProfile::describe() const {
  std::ostringstream os;
  os << "radial Newton potential, n = " << n_ << ", support " << source_.support;
  return os.str();
}

double inversion_residual(const RadialProfile& v, const RadialSource& source, int n) {
  const double R = source.support;
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double r = R * (0.05 + 0.9 * i / 19.0);
    const double h = 4e-3 * r;
    const double g2 = v.value(r + 2 * h), g1 = v.value(r + h), g0 = v.value(r),
                 gm1 = v.value(r - h), gm2 = v.value(r - 2 * h);
    const double d2 = (-g2 + 16 * g1 - 30 * g0 + 16 * gm1 - gm2) / (12 * h * h);
    const double d1 = (-g2 + 8 * g1 - 8 * gm1 + gm2) / (12 * h);
    const double lap = d2 + (n - 1) * d1 / r;
    const double src = source.h(r);
    worst = std::max(worst, std::fabs(lap + src));
    scale = std::max(scale, std::fabs(src));
  }
  return scale > 0.0 ? worst / scale : worst;
}

FieldSpec newton_potential(const RadialSource& source, int n, int operator_order) {
  if (operator_order != 2 && operator_order != 4) {
    throw ConfigError("operator order must be 2 or 4");
  }
  const RadialSource bounded{[h = source.h, R = source.support](double r) {
                               return r <= R ? h(r) : 0.0;
                             },
                             source.support};
  auto first = std::make_shared<const PotentialProfile>(bounded, n);
  double residual = inversion_residual(RadialProfile(first), bounded, n);
  std::shared_ptr<const PotentialProfile> result = first;
  if (operator_order == 4) {
    // lap v = -v1 on the support, so lap^2 v = -lap v1 = h there
    const RadialSource second{[first, R = source.support](double r) {
                                return r <= R ? first->value(r) : 0.0;
                              },
                              source.support};
    result = std::make_shared<const PotentialProfile>(second, n);
    residual = std::max(residual, inversion_residual(RadialProfile(result), second, n));
  }
  if (residual > 1e-6) {
    throw ToleranceNotMet("potential inversion residual " + std::to_string(residual) +
                          " exceeds 1e-6");
  }
  RadialDomain domain;
  domain.r_min = 1e-12;
  return FieldSpec(n, Family::Custom, FieldSpec::Radial{{RadialProfile(result)}}, domain,
                   {{"operator_order", static_cast<double>(operator_order)},
                    {"support_radius", source.support},
                    {"inversion_residual", residual}});
}

double caccioppoli_ratio(const FieldSpec& field, double theta) {
  if (field.is_radial()) throw FamilyMismatch("Caccioppoli ratios need a polynomial field");
  if (!(theta > 0.0) || !(theta <= 1.0)) throw DomainError("theta must lie in (0, 1]");
  const Polynomial& p = field.polynomials()[0];
  const int n = p.dim();
  Polynomial energy(n);
  for (int i = 0; i < n; ++i) {
    const Polynomial di = p.derivative(i);
    energy = energy + di * di;
    for (int j = 0; j < n; ++j) {
      const Polynomial dij = di.derivative(j);
      energy = energy + dij * dij;
    }
  }
  const double mass = (p * p).integrate_ball(1.0);
  if (!(mass > 0.0)) throw DomainError("Caccioppoli ratio of the zero polynomial");
  return energy.integrate_ball(theta) / mass;
}

double caccioppoli_constant(std::span<const FieldSpec> corpus, double theta) {
  double best = 0.0;
  for (const auto& f : corpus) best = std::max(best, caccioppoli_ratio(f, theta));
  return best;
}

}  // namespace reglab
