#include "reglab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"

namespace reglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double offset_of(std::span<const double> x0) {
  double s = 0.0;
  for (double v : x0) s += v * v;
  return std::sqrt(s);
}

std::vector<double> centre_or_origin(const FieldSpec& field, std::span<const double> c) {
  if (c.empty()) return std::vector<double>(field.n(), 0.0);
  if (static_cast<int>(c.size()) != field.n()) {
    throw DomainError("centre has the wrong dimension");
  }
  return {c.begin(), c.end()};
}

// (sum_c scaled_1^2)^{p/2} e^{(n-p) tau} = |grad u|^p r^n
std::function<double(double)> gradient_power_log(const FieldSpec& field, double p) {
  const int n = field.n();
  return [field, p, n](double t) {
    double s = 0.0;
    for (const auto& j : radial_jets_log(field, t, 1)) s += j.scaled[1] * j.scaled[1];
    if (s == 0.0) return 0.0;
    return std::exp(0.5 * p * std::log(s) + (n - p) * t);
  };
}

// |hess u|^p r^n
std::function<double(double)> hessian_power_log(const FieldSpec& field, double p) {
  const int n = field.n();
  return [field, p, n](double t) {
    double s = 0.0;
    for (const auto& j : radial_jets_log(field, t, 2)) {
      s += j.scaled[2] * j.scaled[2] + (n - 1) * j.scaled[1] * j.scaled[1];
    }
    if (s == 0.0) return 0.0;
    return std::exp(0.5 * p * std::log(s) + (n - 2.0 * p) * t);
  };
}

// |u|^p r^n
std::function<double(double)> value_power_log(const FieldSpec& field, double p) {
  const int n = field.n();
  return [field, p, n](double t) {
    double s = 0.0;
    for (const auto& j : radial_jets_log(field, t, 0)) s += j.scaled[0] * j.scaled[0];
    if (s == 0.0) return 0.0;
    return std::exp(0.5 * p * std::log(s) + n * t);
  };
}

Polynomial translate(const Polynomial& p, std::span<const double> c) {
  const int n = p.dim();
  Polynomial out(n);
  for (const auto& [alpha, coef] : p.terms()) {
    Polynomial term = Polynomial::constant(n, coef);
    for (int i = 0; i < n; ++i) {
      MultiIndex e(n, 0);
      e[i] = 1;
      const Polynomial shifted = Polynomial::monomial(n, e) + Polynomial::constant(n, c[i]);
      for (int k = 0; k < alpha[i]; ++k) term = term * shifted;
    }
    out = out + term;
  }
  return out;
}

double polynomial_gradient_integral(const FieldSpec& field, std::span<const double> x0,
                                    double r, double p) {
  const double half = 0.5 * p;
  if (half != std::round(half) || half < 1.0) {
    throw ConfigError("polynomial Morrey integrals need an even integer index");
  }
  const int n = field.n();
  Polynomial g2(n);
  for (const auto& u : field.polynomials()) {
    for (int i = 0; i < n; ++i) {
      const Polynomial d = u.derivative(i);
      g2 = g2 + d * d;
    }
  }
  Polynomial integrand = Polynomial::constant(n, 1.0);
  for (int k = 0; k < static_cast<int>(half); ++k) integrand = integrand * g2;
  return translate(integrand, x0).integrate_ball(r);
}

double weak_norm(const PointScalar& f, int n, std::span<const double> centre, double radius,
                 std::size_t samples, std::uint64_t seed, double p, double q,
                 double* error = nullptr) {
  const RearrangementCurve curve =
      decreasing_rearrangement(sample_grid(f, n, centre, radius, samples, seed));
  const LorentzNormResult res = lorentz_norm(curve, p, q);
  if (error) *error = res.error_bound;
  return res.value;
}

RadialScalar radial_magnitude(const std::function<double(double)>& power_log, int n,
                              double p) {
  // power_log(t) = m(e^t)^p e^{n t}
  return [power_log, n, p](double r) {
    const double t = std::log(r);
    const double w = power_log(t);
    if (w == 0.0) return 0.0;
    return std::exp((std::log(w) - n * t) / p);
  };
}

double ball_norm(const FieldSpec& field, bool hessian, std::span<const double> centre,
                 double radius, double p, double q, const DecayScanConfig& config,
                 double* error) {
  const int n = field.n();
  if (field.is_radial() && offset_of(centre) == 0.0) {
    const auto power_log = hessian ? hessian_power_log(field, 1.0) : gradient_power_log(field, 1.0);
    const RadialScalar h = radial_magnitude(power_log, n, 1.0);
    const RearrangementCurve curve =
        decreasing_rearrangement(sample_radial(h, n, centre, 0.0, radius));
    const LorentzNormResult res = lorentz_norm(curve, p, q);
    *error = res.error_bound;
    return res.value;
  }
  const PointScalar f = hessian ? hessian_magnitude_at(field) : gradient_magnitude_at(field);
  return weak_norm(f, n, centre, radius, config.samples, config.seed, p, q, error);
}

// Polynomial flattened for repeated evaluation.
struct FlatPolynomial {
  int n = 0;
  int max_power = 0;
  std::vector<int> exponents;  // terms x n
  std::vector<double> coefs;

  FlatPolynomial(const Polynomial& p) : n(p.dim()) {
    for (const auto& [e, c] : p.terms()) {
      exponents.insert(exponents.end(), e.begin(), e.end());
      coefs.push_back(c);
      for (int k : e) max_power = std::max(max_power, k);
    }
  }
  // powers[i * (max_power + 1) + k] = x_i^k
  double operator()(std::span<const double> powers, int stride) const {
    double sum = 0.0;
    for (std::size_t t = 0; t < coefs.size(); ++t) {
      double m = coefs[t];
      for (int i = 0; i < n; ++i) m *= powers[i * stride + exponents[t * n + i]];
      sum += m;
    }
    return sum;
  }
};

// |grad u| and |hess u| of a polynomial field from precomputed derivatives.
struct PolynomialMagnitudes {
  int n = 0;
  int stride = 1;
  std::vector<FlatPolynomial> first;
  std::vector<FlatPolynomial> second;
  std::vector<double> second_weight;  // 2 off the diagonal

  explicit PolynomialMagnitudes(const FieldSpec& field) : n(field.n()) {
    int top = 0;
    for (const auto& u : field.polynomials()) {
      for (int i = 0; i < n; ++i) {
        const Polynomial di = u.derivative(i);
        first.emplace_back(di);
        top = std::max(top, first.back().max_power);
        for (int j = i; j < n; ++j) {
          second.emplace_back(di.derivative(j));
          second_weight.push_back(i == j ? 1.0 : 2.0);
        }
      }
    }
    stride = top + 1;
  }

  std::vector<double> powers(std::span<const double> x) const {
    std::vector<double> out(n * stride);
    for (int i = 0; i < n; ++i) {
      double v = 1.0;
      for (int k = 0; k < stride; ++k) {
        out[i * stride + k] = v;
        v *= x[i];
      }
    }
    return out;
  }
  PointScalar gradient() const {
    return [this](std::span<const double> x) {
      const std::vector<double> pw = powers(x);
      double s = 0.0;
      for (const auto& d : first) {
        const double v = d(pw, stride);
        s += v * v;
      }
      return std::sqrt(s);
    };
  }
  PointScalar hessian() const {
    return [this](std::span<const double> x) {
      const std::vector<double> pw = powers(x);
      double s = 0.0;
      for (std::size_t k = 0; k < second.size(); ++k) {
        const double v = second[k](pw, stride);
        s += second_weight[k] * v * v;
      }
      return std::sqrt(s);
    };
  }
};

std::string format_index(double v) {
  if (std::isinf(v)) return "inf";
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

LogLogFit fit_log_log(std::span<const double> radii, std::span<const double> values) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < std::min(radii.size(), values.size()); ++i) {
    if (radii[i] > 0.0 && values[i] > 0.0 && std::isfinite(values[i])) {
      x.push_back(std::log(radii[i]));
      y.push_back(std::log(values[i]));
    }
  }
  if (x.size() < 2) throw EmptyInput("log-log fit needs two positive points");
  const double m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw EmptyInput("log-log fit needs two distinct radii");
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  fit.clean = fit.residual <= 0.1;
  return fit;
}

MorreyResult morrey_subnorm(const FieldSpec& field, std::span<const double> x0, double r,
                            double p, double tol, int decades) {
  const int n = field.n();
  if (!(r > 0.0)) throw DomainError("Morrey radius must be positive");
  if (!(p >= 1.0)) throw IndexError("Morrey index must be at least 1");
  const std::vector<double> c = centre_or_origin(field, x0);
  const double d = offset_of(c);
  const double scale = std::pow(r, p - n);
  MorreyResult out;
  if (!field.is_radial()) {
    out.value = scale * polynomial_gradient_integral(field, c, r, p);
    return out;
  }
  if (d + r > field.domain().r_max * (1.0 + 1e-12)) {
    throw DomainError("Morrey ball leaves the field's domain");
  }
  const RadialIntegrand h = RadialIntegrand::from_log_radius(gradient_power_log(field, p));
  QuadratureOptions opts;
  opts.tol = tol;
  QuadratureResult q;
  if (d == 0.0) {
    q = integrate_radial(h, 0.0, r, n, opts);
    for (int k = 0; k < decades; ++k) {
      const double hi = r * std::pow(10.0, -k), lo = hi / 10.0;
      out.decade_increments.push_back(scale * integrate_radial(h, lo, hi, n, opts).value);
    }
  } else {
    q = integrate_offcenter_ball(h, d, r, n, opts);
  }
  out.verdict = q.verdict;
  out.value = q.converged() ? scale * q.value : kInf;
  out.error = q.converged() ? scale * q.error_estimate : kInf;
  return out;
}

std::vector<double> DecayScanConfig::radii() const {
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("scan ratio must lie in (0, 1)");
  if (!(r0 > 0.0)) throw ConfigError("scan radius must be positive");
  if (count < 1) throw ConfigError("scan needs at least one radius");
  std::vector<double> out(count);
  for (int l = 0; l < count; ++l) out[l] = r0 * std::pow(theta, l);
  return out;
}

std::string to_string(DecayScanConfig::Norm norm) {
  switch (norm) {
    case DecayScanConfig::Norm::Morrey: return "morrey";
    case DecayScanConfig::Norm::Lorentz: return "lorentz";
    case DecayScanConfig::Norm::Oscillation: return "oscillation";
  }
  return "lorentz";
}

DecayScanConfig::Norm decay_norm_from_string(const std::string& name) {
  if (name == "morrey") return DecayScanConfig::Norm::Morrey;
  if (name == "lorentz") return DecayScanConfig::Norm::Lorentz;
  if (name == "oscillation") return DecayScanConfig::Norm::Oscillation;
  throw ConfigError("unknown norm '" + name + "'");
}

ScanReport lorentz_ball_decay(const FieldSpec& field, const DecayScanConfig& config) {
  const int n = field.n();
  const std::vector<double> radii = config.radii();
  const std::vector<double> c = centre_or_origin(field, config.center);
  const double d = offset_of(c);
  if (field.is_radial() && d + radii.front() > field.domain().r_max * (1.0 + 1e-12)) {
    throw DomainError("scan ball leaves the field's domain");
  }
  const double p = config.p > 0.0 ? config.p : n;

  ScanReport rep;
  rep.center = c;
  rep.radii = radii;
  switch (config.norm) {
    case DecayScanConfig::Norm::Oscillation:
      rep = oscillation_scan(field, c, radii);
      break;
    case DecayScanConfig::Norm::Morrey: {
      rep.quantity = "morrey p=" + format_index(p);
      for (double r : radii) {
        const MorreyResult m = morrey_subnorm(field, c, r, p);
        rep.values.push_back(m.value);
        rep.errors.push_back(m.error);
      }
      break;
    }
    case DecayScanConfig::Norm::Lorentz: {
      rep.quantity = "lorentz |grad u| p=" + format_index(p) + " q=" + format_index(config.q);
      std::vector<double> grad, hess;
      for (double r : radii) {
        double e1 = 0.0;
        const double g = ball_norm(field, false, c, r, p, config.q, config, &e1);
        double value = g, err = e1;
        grad.push_back(g);
        if (config.paired) {
          double e2 = 0.0;
          const double h = ball_norm(field, true, c, r, 0.5 * p, config.q, config, &e2);
          hess.push_back(h);
          value += h;
          err += e2;
        }
        rep.values.push_back(value);
        rep.errors.push_back(err);
      }
      if (config.paired) {
        rep.quantity += " + |hess u| p=" + format_index(0.5 * p);
        rep.series["gradient"] = grad;
        rep.series["hessian"] = hess;
      }
      break;
    }
  }
  rep.scalars["theta"] = config.theta;
  rep.scalars["alpha0"] = std::log(2.0) / std::log(1.0 / config.theta);
  bool halving = rep.values.size() > 1;
  for (std::size_t l = 0; l + 1 < rep.values.size(); ++l) {
    halving = halving && rep.values[l + 1] <= 0.5 * rep.values[l];
  }
  rep.scalars["halving"] = halving ? 1.0 : 0.0;
  rep.fit.reset();
  if (config.fit) {
    try {
      rep.fit = fit_log_log(rep.radii, rep.values);
    } catch (const EmptyInput&) {
    }
  }
  return rep;
}

ScanReport oscillation_scan(const FieldSpec& field, std::span<const double> center,
                            std::span<const double> radii) {
  if (!field.is_radial()) throw FamilyMismatch("oscillation scans need a radial field");
  const std::vector<double> c = centre_or_origin(field, center);
  const double d = offset_of(c);
  ScanReport rep;
  rep.quantity = "oscillation";
  rep.center = c;
  rep.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    if (!(r > 0.0)) throw DomainError("oscillation radius must be positive");
    const double inner = d - r;
    const Interval log_r{inner > 0.0 ? std::log(inner) : -kInf, std::log(d + r)};
    double osc = 0.0;
    for (const auto& prof : field.profiles()) {
      if (prof.is_chain()) {
        const Interval range = prof.chain().range(log_r);
        osc = std::max(osc, range.width());
        continue;
      }
      // numeric profiles: dense log sampling down to the grid floor
      const double lo = std::max(log_r.lo, log_r.hi - 40.0);
      double vmin = kInf, vmax = -kInf;
      for (int i = 0; i <= 4096; ++i) {
        const double v = prof.jet(std::exp(lo + (log_r.hi - lo) * i / 4096.0), 0).d[0];
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
      osc = std::max(osc, vmax - vmin);
    }
    rep.values.push_back(osc);
    rep.errors.push_back(0.0);
  }
  try {
    rep.fit = fit_log_log(rep.radii, rep.values);
  } catch (const EmptyInput&) {
  }
  return rep;
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "Member";
    case Membership::NotMember: return "NotMember";
    case Membership::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

MembershipVerdict sobolev_membership(const FieldSpec& field, int k, double p, double tol) {
  if (k != 1 && k != 2) throw ConfigError("Sobolev order must be 1 or 2");
  if (!(p >= 1.0)) throw IndexError("Sobolev index must be at least 1");
  if (!field.is_radial()) throw FamilyMismatch("membership tables need a radial field");
  const double R = field.domain().r_max;
  if (!std::isfinite(R)) throw DomainError("membership needs a bounded domain");
  const int n = field.n();

  std::vector<std::pair<std::string, std::function<double(double)>>> parts = {
      {"|u|^p", value_power_log(field, p)}, {"|grad u|^p", gradient_power_log(field, p)}};
  if (k == 2) {
    parts.emplace_back("|grad u|^2p", gradient_power_log(field, 2.0 * p));
    parts.emplace_back("|hess u|^p", hessian_power_log(field, p));
  }
  MembershipVerdict out;
  out.k = k;
  out.p = p;
  bool divergent = false, undecided = false;
  QuadratureOptions opts;
  opts.tol = tol;
  for (const auto& [name, w] : parts) {
    MembershipComponent comp;
    comp.name = name;
    try {
      const QuadratureResult q =
          integrate_radial(RadialIntegrand::from_log_radius(w), 0.0, R, n, opts);
      comp.value = q.converged() ? q.value : kInf;
      comp.verdict = q.verdict;
      comp.increments = q.increments;
    } catch (const ToleranceNotMet&) {
      comp.value = std::numeric_limits<double>::quiet_NaN();
      comp.verdict = Verdict::Inconclusive;
    }
    if (comp.verdict == Verdict::Divergent && !divergent) {
      divergent = true;
      out.increments = comp.increments;
    }
    undecided = undecided || comp.verdict == Verdict::Inconclusive;
    out.components.push_back(std::move(comp));
  }
  out.verdict = divergent   ? Membership::NotMember
                : undecided ? Membership::Inconclusive
                            : Membership::Member;
  return out;
}

std::vector<std::vector<double>> sample_centers(int n, std::size_t count, double radius,
                                                std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  if (count == 0) return out;
  out.emplace_back(n, 0.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  while (out.size() < count) {
    std::vector<double> x(n);
    double s = 0.0;
    for (auto& v : x) {
      v = unit(rng);
      s += v * v;
    }
    if (s >= 1.0) continue;
    for (auto& v : x) v *= radius;
    out.push_back(std::move(x));
  }
  return out;
}

DecayConstantReport harmonic_decay_constant(std::span<const FieldSpec> corpus,
                                            std::span<const double> thetas,
                                            std::span<const std::vector<double>> centers,
                                            bool paired, std::size_t samples,
                                            std::uint64_t seed) {
  if (corpus.empty()) throw EmptyInput("empty corpus");
  for (double t : thetas) {
    if (!(t > 0.0 && t < 0.25)) throw ConfigError("theta must lie in (0, 1/4)");
  }
  for (const auto& x : centers) {
    if (!(offset_of(x) < 0.25)) throw ConfigError("centres must lie in B_{1/4}");
  }
  DecayConstantReport rep;
  rep.thetas.assign(thetas.begin(), thetas.end());
  rep.centers.assign(centers.begin(), centers.end());

  const auto scan = [&](std::size_t count, bool keep) {
    // point clouds shared by every field: B_1 first, then theta-major balls
    std::map<int, std::vector<std::vector<double>>> clouds;
    const auto cloud = [&](int n, std::size_t slot, std::span<const double> c, double r)
        -> const std::vector<double>& {
      auto& v = clouds[n];
      if (v.empty()) v.resize(1 + thetas.size() * centers.size());
      if (v[slot].empty()) v[slot] = ball_points(n, c, r, count, seed);
      return v[slot];
    };
    double best = 0.0;
    for (const auto& field : corpus) {
      const int n = field.n();
      if (field.is_radial()) throw FamilyMismatch("decay constants need polynomial fields");
      const PolynomialMagnitudes mags(field);
      const PointScalar grad = mags.gradient();
      const PointScalar hess = mags.hessian();
      const auto norm = [&](std::size_t slot, std::span<const double> c, double r) {
        const std::vector<double>& pts = cloud(n, slot, c, r);
        const double measure = ball_volume(n) * std::pow(r, n);
        const auto one = [&](const PointScalar& f, double p) {
          return lorentz_norm(decreasing_rearrangement(sample_points(f, n, pts, measure)), p, kInf)
              .value;
        };
        double v = one(grad, n);
        if (paired) v += one(hess, 0.5 * n);
        return v;
      };
      const std::vector<double> origin(n, 0.0);
      const double whole = norm(0, origin, 1.0);
      if (!(whole > 0.0)) {
        if (keep) ++rep.skipped;
        continue;
      }
      std::vector<std::vector<double>> table;
      for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
        const double t = thetas[ti];
        std::vector<double> row;
        for (std::size_t ci = 0; ci < centers.size(); ++ci) {
          const auto& x = centers[ci];
          if (static_cast<int>(x.size()) != n) throw DomainError("centre has the wrong dimension");
          const double ratio = norm(1 + ti * centers.size() + ci, x, t) / (t * whole);
          row.push_back(ratio);
          best = std::max(best, ratio);
        }
        table.push_back(std::move(row));
      }
      if (keep) rep.ratios.push_back(std::move(table));
    }
    return best;
  };
  rep.max_ratio = scan(samples, true);
  if (rep.ratios.empty()) throw DomainError("every corpus field has a vanishing norm on B_1");
  rep.refined_max_ratio = scan(2 * samples, false);
  rep.relative_change = std::fabs(rep.refined_max_ratio - rep.max_ratio) / rep.max_ratio;
  rep.stable = std::isfinite(rep.max_ratio) && rep.relative_change < 0.1;
  return rep;
}

}  // namespace reglab
