#include "reglab/field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"
#include "reglab/quadrature.hpp"

namespace reglab {

namespace {

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double kronecker(int i, int j) { return i == j ? 1.0 : 0.0; }

// All sorted multi-indices of length `rank` over {0..dim-1}, colex order.
void enumerate_sorted(int dim, int rank, std::vector<int>& current, int max,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == rank) {
    out.push_back(current);
    return;
  }
  for (int i = 0; i <= max && i < dim; ++i) {
    current.push_back(i);
    enumerate_sorted(dim, rank, current, i, out);
    current.pop_back();
  }
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::LogLog4D: return "loglog4";
    case Family::SinLogSecondOrder: return "sinlog2nd";
    case Family::SinLogFourthOrder: return "sinlog4th";
    case Family::FundamentalLaplace: return "fundamental_laplace";
    case Family::FundamentalBilap: return "fundamental_bilap";
    case Family::HarmonicPoly: return "harmonic_poly";
    case Family::BiharmonicPoly: return "biharmonic_poly";
    case Family::PowerLaw: return "powerlaw";
    case Family::Custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::LogLog4D, Family::SinLogSecondOrder,
                   Family::SinLogFourthOrder, Family::FundamentalLaplace,
                   Family::FundamentalBilap, Family::HarmonicPoly,
                   Family::BiharmonicPoly, Family::PowerLaw, Family::Custom}) {
    if (to_string(f) == name) return f;
  }
  throw ConfigError("unknown field family '" + name + "'");
}

SymmetricTensor::SymmetricTensor(int dim, int rank)
    : dim_(dim), rank_(rank), data_(binomial(dim + rank - 1, rank), 0.0) {}

std::size_t SymmetricTensor::offset(std::span<const int> idx) const {
  std::array<int, 8> sorted{};
  const int m = static_cast<int>(idx.size());
  std::copy(idx.begin(), idx.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.begin() + m);
  std::size_t pos = 0;
  for (int j = 0; j < m; ++j) pos += binomial(sorted[j] + j, j + 1);
  return pos;
}

std::vector<std::vector<int>> SymmetricTensor::indices() const {
  std::vector<std::vector<int>> all;
  std::vector<int> current;
  enumerate_sorted(dim_, rank_, current, dim_ - 1, all);
  // enumerate_sorted yields nonincreasing tuples; store them sorted ascending
  // which is already storage order once each tuple is reversed
  for (auto& t : all) std::reverse(t.begin(), t.end());
  return all;
}

double JetBundle::laplacian(int c) const {
  if (order < 2) throw OrderError("Laplacian needs order >= 2");
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += hess(c, i, i);
  return s;
}

double JetBundle::bilaplacian(int c) const {
  if (order < 4) throw OrderError("bilaplacian needs order 4");
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int idx[4] = {i, i, j, j};
      s += fourth[c].at(idx);
    }
  }
  return s;
}

double JetBundle::gradient_norm() const {
  double s = 0.0;
  for (double g : gradient) s += g * g;
  return std::sqrt(s);
}

double JetBundle::hessian_norm() const {
  double s = 0.0;
  for (double h : hessian) s += h * h;
  return std::sqrt(s);
}

FieldSpec::FieldSpec(int n, Family family, Radial radial, RadialDomain domain,
                     std::map<std::string, double> params)
    : n_(n),
      K_(static_cast<int>(radial.components.size())),
      family_(family),
      kind_(std::move(radial)),
      domain_(domain),
      params_(std::move(params)) {
  if (n_ < 1) throw UnsupportedDimension("field dimension must be >= 1");
  if (K_ < 1) throw ConfigError("field needs at least one component");
  if (!(domain_.r_min >= 0.0) || !(domain_.r_max > domain_.r_min)) {
    throw ConfigError("invalid radial domain");
  }
}

FieldSpec::FieldSpec(int n, Family family, Poly poly,
                     std::map<std::string, double> params)
    : n_(n),
      K_(static_cast<int>(poly.components.size())),
      family_(family),
      kind_(std::move(poly)),
      domain_{0.0, std::numeric_limits<double>::infinity()},
      params_(std::move(params)) {
  if (n_ < 1) throw UnsupportedDimension("field dimension must be >= 1");
  if (K_ < 1) throw ConfigError("field needs at least one component");
  for (const auto& p : polynomials()) {
    if (p.dim() != n_ && !p.terms().empty()) {
      throw ConfigError("polynomial dimension does not match the field");
    }
  }
}

double FieldSpec::param(const std::string& key) const {
  auto it = params_.find(key);
  if (it == params_.end()) throw ConfigError("field has no parameter " + key);
  return it->second;
}

const std::vector<RadialProfile>& FieldSpec::profiles() const {
  if (!is_radial()) throw FamilyMismatch("field is not radial");
  return std::get<Radial>(kind_).components;
}

const std::vector<Polynomial>& FieldSpec::polynomials() const {
  if (is_radial()) throw FamilyMismatch("field is not polynomial");
  return std::get<Poly>(kind_).components;
}

FieldSpec FieldSpec::with_domain(RadialDomain domain) const {
  FieldSpec copy = *this;
  if (!(domain.r_min >= 0.0) || !(domain.r_max > domain.r_min)) {
    throw ConfigError("invalid radial domain");
  }
  copy.domain_ = domain;
  return copy;
}

FieldSpec FieldSpec::perturbed(int component, double factor) const {
  if (component < 0 || component >= K_) {
    throw ConfigError("perturbed component index out of range");
  }
  FieldSpec copy = *this;
  copy.family_ = Family::Custom;
  if (is_radial()) {
    auto& comps = std::get<Radial>(copy.kind_).components;
    const RadialProfile& p = comps[component];
    if (!p.is_chain()) throw FamilyMismatch("cannot perturb a numeric profile");
    comps[component] = p.chain().then(ProfileOp::affine(factor, 0.0));
  } else {
    auto& comps = std::get<Poly>(copy.kind_).components;
    comps[component] = comps[component] * factor;
  }
  return copy;
}

void FieldSpec::check_point(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw DomainError("point has dimension " + std::to_string(x.size()) +
                      ", field expects " + std::to_string(n_));
  }
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  if (is_radial() && !(r > 0.0)) {
    throw DomainError("radial field evaluated at the origin");
  }
  if (r < domain_.r_min || r > domain_.r_max) {
    throw DomainError("|x| = " + std::to_string(r) +
                      " outside the field's domain");
  }
}

std::vector<RadialJet> radial_jets(const FieldSpec& field, double r,
                                   int order) {
  if (!(r > 0.0) || r < field.domain().r_min || r > field.domain().r_max) {
    throw DomainError("radius " + std::to_string(r) +
                      " outside the field's domain");
  }
  std::vector<RadialJet> out;
  for (const auto& p : field.profiles()) out.push_back(p.jet(r, order));
  return out;
}

std::vector<RadialJet> radial_jets_log(const FieldSpec& field, double log_r,
                                       int order) {
  std::vector<RadialJet> out;
  for (const auto& p : field.profiles()) out.push_back(p.jet_log(log_r, order));
  return out;
}

namespace {

void fill_radial(const FieldSpec& field, std::span<const double> x, int order,
                 JetBundle& jet) {
  const int n = field.n();
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double r = std::sqrt(r2);
  // d/ds of r = sqrt(s) at s = r^2
  const Jet4 root{{r, 0.5 / r, -0.25 / (r * r * r),
                   0.375 / (r * r * r * r * r),
                   -0.9375 / (r * r * r * r * r * r * r)}};
  for (int c = 0; c < field.K(); ++c) {
    const RadialJet rj = field.profiles()[c].jet(r, order);
    jet.values[c] = rj.d[0];
    if (order == 0) continue;
    const Jet4 h = compose(rj.d, root);  // derivatives of g(sqrt(s)) in s
    for (int i = 0; i < n; ++i) jet.gradient[c * n + i] = 2.0 * h[1] * x[i];
    if (order < 2) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double v = 4.0 * h[2] * x[i] * x[j] + 2.0 * h[1] * kronecker(i, j);
        jet.hessian[(c * n + i) * n + j] = v;
        jet.hessian[(c * n + j) * n + i] = v;
      }
    }
    if (order >= 3) {
      SymmetricTensor& t = jet.third[c];
      for (const auto& idx : t.indices()) {
        const int i = idx[0], j = idx[1], k = idx[2];
        t.at(idx) = 8.0 * h[3] * x[i] * x[j] * x[k] +
                    4.0 * h[2] *
                        (kronecker(i, j) * x[k] + kronecker(i, k) * x[j] +
                         kronecker(j, k) * x[i]);
      }
    }
    if (order >= 4) {
      SymmetricTensor& t = jet.fourth[c];
      for (const auto& idx : t.indices()) {
        const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
        const double pairs =
            kronecker(i, j) * x[k] * x[l] + kronecker(i, k) * x[j] * x[l] +
            kronecker(i, l) * x[j] * x[k] + kronecker(j, k) * x[i] * x[l] +
            kronecker(j, l) * x[i] * x[k] + kronecker(k, l) * x[i] * x[j];
        const double deltas = kronecker(i, j) * kronecker(k, l) +
                              kronecker(i, k) * kronecker(j, l) +
                              kronecker(i, l) * kronecker(j, k);
        t.at(idx) = 16.0 * h[4] * x[i] * x[j] * x[k] * x[l] +
                    8.0 * h[3] * pairs + 4.0 * h[2] * deltas;
      }
    }
  }
}

void fill_polynomial(const FieldSpec& field, std::span<const double> x,
                     int order, JetBundle& jet) {
  const int n = field.n();
  for (int c = 0; c < field.K(); ++c) {
    const Polynomial& p = field.polynomials()[c];
    jet.values[c] = p(x);
    if (order == 0) continue;
    std::vector<Polynomial> first;
    for (int i = 0; i < n; ++i) {
      first.push_back(p.derivative(i));
      jet.gradient[c * n + i] = first[i](x);
    }
    if (order < 2) continue;
    std::vector<Polynomial> second(n * n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        second[i * n + j] = first[i].derivative(j);
        second[j * n + i] = second[i * n + j];
        const double v = second[i * n + j](x);
        jet.hessian[(c * n + i) * n + j] = v;
        jet.hessian[(c * n + j) * n + i] = v;
      }
    }
    if (order >= 3) {
      SymmetricTensor& t = jet.third[c];
      for (const auto& idx : t.indices()) {
        t.at(idx) = second[idx[0] * n + idx[1]].derivative(idx[2])(x);
      }
    }
    if (order >= 4) {
      SymmetricTensor& t = jet.fourth[c];
      for (const auto& idx : t.indices()) {
        const int rest[2] = {idx[2], idx[3]};
        t.at(idx) = second[idx[0] * n + idx[1]].derivative(rest)(x);
      }
    }
  }
}

}  // namespace

JetBundle eval_jet(const FieldSpec& field, std::span<const double> x,
                   int order) {
  if (order < 0 || order > 4) {
    throw OrderError("jet order must lie in 0..4, got " +
                     std::to_string(order));
  }
  field.check_point(x);
  JetBundle jet;
  jet.point.assign(x.begin(), x.end());
  jet.n = field.n();
  jet.K = field.K();
  jet.order = order;
  const int n = jet.n, K = jet.K;
  jet.values.assign(K, 0.0);
  if (order >= 1) jet.gradient.assign(K * n, 0.0);
  if (order >= 2) jet.hessian.assign(K * n * n, 0.0);
  if (order >= 3) jet.third.assign(K, SymmetricTensor(n, 3));
  if (order >= 4) jet.fourth.assign(K, SymmetricTensor(n, 4));
  if (field.is_radial()) {
    fill_radial(field, x, order, jet);
  } else {
    fill_polynomial(field, x, order, jet);
  }
  return jet;
}

namespace catalog {

FieldSpec loglog4d() {
  return FieldSpec(
      4, Family::LogLog4D,
      FieldSpec::Radial{{profiles::sin_log_log(), profiles::cos_log_log()}},
      RadialDomain{1e-12, kOmegaRadius});
}

FieldSpec sinlog_second_order(int n) {
  if (n < 3) throw UnsupportedDimension("sinlog2nd needs n >= 3");
  const double factor = 2.0 - n;
  return FieldSpec(n, Family::SinLogSecondOrder,
                   FieldSpec::Radial{{profiles::sin_log(factor),
                                      profiles::cos_log(factor)}},
                   RadialDomain{1e-12, kOmegaRadius});
}

FieldSpec sinlog_fourth_order(int n) {
  if (n < 5) throw UnsupportedDimension("sinlog4th needs n >= 5");
  const double factor = 4.0 - n;
  return FieldSpec(n, Family::SinLogFourthOrder,
                   FieldSpec::Radial{{profiles::sin_log(factor),
                                      profiles::cos_log(factor)}},
                   RadialDomain{1e-12, kOmegaRadius});
}

FieldSpec power_law(int n, double alpha, double coefficient) {
  return FieldSpec(n, Family::PowerLaw,
                   FieldSpec::Radial{{profiles::power(alpha, coefficient)}},
                   RadialDomain{},
                   {{"exponent", alpha}, {"coefficient", coefficient}});
}

FieldSpec polynomial(Polynomial p, Family family) {
  const int n = p.dim();
  return FieldSpec(n, family, FieldSpec::Poly{{std::move(p)}});
}

FieldSpec custom_radial(int n, std::vector<RadialProfile> components,
                        RadialDomain domain) {
  return FieldSpec(n, Family::Custom, FieldSpec::Radial{std::move(components)},
                   domain);
}

}  // namespace catalog

double bilaplacian_pairing(int n, double c_n, const ChainProfile& bump,
                           double radius) {
  const auto w = [&bump, n](double t) {
    const RadialJet j = RadialJet::from_log_jet(t, bump.eval_log(t), 4);
    // |x|^{4-n} lap^2 phi r^n = r^4 lap^2 phi
    return scaled_bilaplacian(j, n);
  };
  QuadratureOptions opts;
  opts.tol = 1e-10;
  const QuadratureResult r =
      integrate_radial(RadialIntegrand::from_log_radius(w), 0.0, radius, n, opts);
  return c_n * r.value;
}

BilapCalibration bilaplacian_calibration(int n) {
  if (n < 5) throw UnsupportedDimension("bilaplacian kernel needs n >= 5");
  const ChainProfile bump = profiles::polynomial_bump(1.0, 5.0);
  const double phi0 = bump.eval_log(-300.0)[0];
  const double pairing = bilaplacian_pairing(n, 1.0, bump, 1.0);
  BilapCalibration out;
  out.c_n = phi0 / pairing;
  out.residual = std::fabs(out.c_n * pairing - phi0) / phi0;
  return out;
}

FieldSpec fundamental_solution(int n, int operator_order) {
  if (operator_order == 2) {
    if (n < 3) {
      throw UnsupportedDimension(
          "the logarithmic Laplace kernel (n = 2) is not supported");
    }
    const double coef = 1.0 / (n * (n - 2.0) * ball_volume(n));
    return FieldSpec(n, Family::FundamentalLaplace,
                     FieldSpec::Radial{{profiles::power(2.0 - n, coef)}},
                     RadialDomain{}, {{"coefficient", coef}});
  }
  if (operator_order == 4) {
    if (n < 5) {
      throw UnsupportedDimension(
          "the bilaplacian kernel is only provided for n >= 5");
    }
    const BilapCalibration cal = bilaplacian_calibration(n);
    return FieldSpec(n, Family::FundamentalBilap,
                     FieldSpec::Radial{{profiles::power(4.0 - n, cal.c_n)}},
                     RadialDomain{},
                     {{"c_n", cal.c_n},
                      {"coefficient", cal.c_n},
                      {"calibration_residual", cal.residual}});
  }
  throw ConfigError("operator order must be 2 or 4");
}

namespace {

// Harmonic part of a homogeneous polynomial of degree d:
// sum_j (-1)^j |x|^{2j} lap^j p / (2^j j! prod_{i=1..j} (n + 2d - 2i - 2)).
Polynomial harmonic_projection(const Polynomial& p, int degree) {
  const int n = p.dim();
  Polynomial out = p;
  Polynomial lap = p;
  Polynomial rpow = Polynomial::constant(n, 1.0);
  double denom = 1.0;
  for (int j = 1; 2 * j <= degree; ++j) {
    lap = lap.laplacian();
    rpow = rpow * Polynomial::norm_squared(n);
    denom *= 2.0 * j * (n + 2.0 * degree - 2.0 * j - 2.0);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out = out + (rpow * lap) * (sign / denom);
  }
  return out;
}

// Exponent vectors for partitions of `degree` into at most n parts.
void partitions(int remaining, int max_part, MultiIndex& current, int n,
                std::vector<MultiIndex>& out) {
  if (remaining == 0) {
    MultiIndex e(n, 0);
    std::copy(current.begin(), current.end(), e.begin());
    out.push_back(e);
    return;
  }
  if (static_cast<int>(current.size()) == n) return;
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions(remaining - part, part, current, n, out);
    current.pop_back();
  }
}

std::vector<Polynomial> harmonic_basis(int n, int max_degree) {
  std::vector<Polynomial> out;
  out.push_back(Polynomial::constant(n, 1.0));
  if (max_degree >= 1) {
    for (int i = 0; i < n; ++i) {
      MultiIndex e(n, 0);
      e[i] = 1;
      out.push_back(Polynomial::monomial(n, e));
    }
  }
  if (max_degree >= 2) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        MultiIndex e(n, 0);
        e[i] = 1;
        e[j] = 1;
        out.push_back(Polynomial::monomial(n, e));
      }
    }
    for (int j = 1; j < n; ++j) {
      MultiIndex a(n, 0), b(n, 0);
      a[0] = 2;
      b[j] = 2;
      out.push_back(Polynomial::monomial(n, a) - Polynomial::monomial(n, b));
    }
  }
  for (int degree = 3; degree <= max_degree; ++degree) {
    std::vector<MultiIndex> shapes;
    MultiIndex current;
    partitions(degree, degree, current, n, shapes);
    for (const auto& e : shapes) {
      Polynomial h = harmonic_projection(Polynomial::monomial(n, e), degree);
      if (!h.is_zero(1e-14)) out.push_back(h);
    }
  }
  return out;
}

}  // namespace

std::vector<FieldSpec> comparison_corpus(CorpusKind kind, int n,
                                         int max_degree) {
  if (max_degree < 0 || max_degree > 4) {
    throw ConfigError("corpus degree must lie in 0..4");
  }
  if (n < 1) throw UnsupportedDimension("corpus dimension must be >= 1");
  std::vector<FieldSpec> out;
  const auto add = [&](const Polynomial& p, Family family) {
    const Polynomial check =
        family == Family::HarmonicPoly ? p.laplacian() : p.bilaplacian();
    if (!check.is_zero(1e-12 * std::max(1.0, p.max_abs_coefficient()))) {
      throw std::logic_error("corpus entry failed its Laplacian check: " +
                             p.to_string());
    }
    FieldSpec f(n, family, FieldSpec::Poly{{p}},
                {{"degree", static_cast<double>(p.degree())}});
    out.push_back(std::move(f));
  };
  const std::vector<Polynomial> harmonic = harmonic_basis(n, max_degree);
  if (kind == CorpusKind::Harmonic) {
    for (const auto& h : harmonic) add(h, Family::HarmonicPoly);
    return out;
  }
  for (const auto& h : harmonic) add(h, Family::BiharmonicPoly);
  if (max_degree >= 2) {
    const Polynomial r2 = Polynomial::norm_squared(n);
    for (const auto& h : harmonic_basis(n, max_degree - 2)) {
      add(r2 * h, Family::BiharmonicPoly);
    }
  }
  return out;
}

}  // namespace reglab
