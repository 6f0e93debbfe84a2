#include "reglab/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include <boost/math/quadrature/gauss.hpp>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"

namespace reglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated running sum.
struct Accumulator {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

void check_indices(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw IndexError("Lorentz index p must satisfy 1 < p < inf");
  }
  if (!(q >= 1.0)) throw IndexError("Lorentz index q must satisfy q >= 1");
}

}  // namespace

void WeightedSampleSet::add(double value, double weight) {
  add(value, weight, value, value);
}

void WeightedSampleSet::add(double value, double weight, double lower,
                            double upper) {
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw DomainError("sample weights must be positive and finite");
  }
  value = std::fabs(value);
  lower = std::fabs(lower);
  upper = std::fabs(upper);
  if (lower > upper) std::swap(lower, upper);
  if (lower != upper) bracketed_ = true;
  entries_.push_back({value, weight, std::min(lower, value),
                      std::max(upper, value), 0});
}

void WeightedSampleSet::add_replicate(double value, double weight,
                                      int replicate) {
  add(value, weight);
  entries_.back().replicate = replicate;
  if (replicate != 0) replicated_ = true;
}

double WeightedSampleSet::total_measure() const {
  std::vector<double> w;
  w.reserve(entries_.size());
  for (const auto& e : entries_) w.push_back(e.weight);
  return pairwise_sum(w);
}

WeightedSampleSet WeightedSampleSet::lower_set() const {
  WeightedSampleSet out;
  for (const auto& e : entries_) out.add(e.lower, e.weight);
  return out;
}

WeightedSampleSet WeightedSampleSet::upper_set() const {
  WeightedSampleSet out;
  for (const auto& e : entries_) out.add(e.upper, e.weight);
  return out;
}

WeightedSampleSet WeightedSampleSet::replicate(int tag) const {
  double part = 0.0;
  for (const auto& e : entries_) {
    if (e.replicate == tag) part += e.weight;
  }
  if (part == 0.0) throw EmptyInput("replicate has no entries");
  const double scale = total_measure() / part;
  WeightedSampleSet out;
  for (const auto& e : entries_) {
    if (e.replicate == tag) out.add(e.value, e.weight * scale);
  }
  return out;
}

double distribution_function(const WeightedSampleSet& samples, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("level must be nonnegative");
  std::vector<double> w;
  for (const auto& e : samples.entries()) {
    if (e.value > lambda) w.push_back(e.weight);
  }
  return pairwise_sum(w);
}

double RearrangementCurve::fstar_at(double t) const {
  if (!(t >= 0.0)) throw DomainError("t must be nonnegative");
  // f*(t) = inf{lambda : D(lambda) <= t}: the value on the first segment
  // whose right knot exceeds t
  const auto it = std::upper_bound(knots.begin(), knots.end(), t);
  if (it == knots.end()) return 0.0;
  return fstar[it - knots.begin()];
}

double RearrangementCurve::fstarstar_at(double t) const {
  if (!(t > 0.0)) throw DomainError("f** needs t > 0");
  if (knots.empty()) return 0.0;
  const auto it = std::lower_bound(knots.begin(), knots.end(), t);
  if (it == knots.end()) return fstarstar.back() * knots.back() / t;
  const std::size_t k = it - knots.begin();
  const double t0 = k == 0 ? 0.0 : knots[k - 1];
  const double s0 = k == 0 ? 0.0 : fstarstar[k - 1] * t0;
  return (s0 + fstar[k] * (t - t0)) / t;
}

double RearrangementCurve::distribution(double lambda) const {
  if (!(lambda >= 0.0)) throw DomainError("level must be nonnegative");
  // fstar is nonincreasing: the superlevel set is an initial segment
  double m = 0.0;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    if (fstar[k] > lambda) m = knots[k];
  }
  return m;
}

void RearrangementCurve::write_csv(std::ostream& os) const {
  const auto old = os.precision(17);
  os << "t,fstar,fstarstar\n";
  for (std::size_t k = 0; k < knots.size(); ++k) {
    os << knots[k] << ',' << fstar[k] << ',' << fstarstar[k] << '\n';
  }
  os.precision(old);
}

namespace {

RearrangementCurve rearrange_plain(const WeightedSampleSet& samples) {
  if (samples.empty()) throw EmptyInput("rearrangement of an empty sample set");
  const auto& entries = samples.entries();
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entries[a].value > entries[b].value;
  });
  RearrangementCurve curve;
  Accumulator measure, mass;
  for (std::size_t i = 0; i < order.size();) {
    const double v = entries[order[i]].value;
    Accumulator level;
    while (i < order.size() && entries[order[i]].value == v) {
      level.add(entries[order[i]].weight);
      ++i;
    }
    measure.add(level.value());
    mass.add(v * level.value());
    const double t = measure.value();
    curve.knots.push_back(t);
    curve.fstar.push_back(v);
    curve.fstarstar.push_back(mass.value() / t);
  }
  curve.total_measure = measure.value();
  return curve;
}

}  // namespace

RearrangementCurve decreasing_rearrangement(const WeightedSampleSet& samples) {
  RearrangementCurve curve = rearrange_plain(samples);
  if (samples.has_brackets()) {
    curve.spread = RearrangementCurve::Spread::Bracket;
    curve.variants.push_back(rearrange_plain(samples.lower_set()));
    curve.variants.push_back(rearrange_plain(samples.upper_set()));
  } else if (samples.has_replicates()) {
    curve.spread = RearrangementCurve::Spread::Replicate;
    curve.variants.push_back(rearrange_plain(samples.replicate(0)));
    curve.variants.push_back(rearrange_plain(samples.replicate(1)));
  }
  return curve;
}

namespace {

double weak_norm(const RearrangementCurve& c, double p) {
  // t^{1/p} f** is quasi-convex on each segment and decreasing past the
  // last knot, so the supremum sits on a knot
  double best = 0.0;
  for (std::size_t k = 0; k < c.knots.size(); ++k) {
    best = std::max(best, std::pow(c.knots[k], 1.0 / p) * c.fstarstar[k]);
  }
  return best;
}

double strong_norm(const RearrangementCurve& c, double p, double q) {
  using GL = boost::math::quadrature::gauss<double, 10>;
  if (c.knots.empty()) return 0.0;
  Accumulator acc;
  // (0, t1]: f** = v
  acc.add(std::pow(c.fstar[0], q) * std::pow(c.knots[0], q / p) * p / q);
  for (std::size_t k = 1; k < c.knots.size(); ++k) {
    const double t0 = c.knots[k - 1], t1 = c.knots[k];
    const double v = c.fstar[k];
    const double s0 = c.fstarstar[k - 1] * t0;
    const auto g = [&](double u) {
      const double t = std::exp(u);
      const double fss = (s0 + v * (t - t0)) / t;
      return std::pow(std::pow(t, 1.0 / p) * fss, q);
    };
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::log2(t1 / t0))));
    const double l0 = std::log(t0), l1 = std::log(t1);
    for (int j = 0; j < pieces; ++j) {
      const double a = l0 + (l1 - l0) * j / pieces;
      const double b = l0 + (l1 - l0) * (j + 1) / pieces;
      acc.add(GL::integrate(g, a, b));
    }
  }
  // beyond the support: f** = S / t
  const double T = c.knots.back();
  const double S = c.fstarstar.back() * T;
  acc.add(std::pow(S, q) * std::pow(T, q / p - q) / (q - q / p));
  return std::pow(acc.value(), 1.0 / q);
}

double curve_norm(const RearrangementCurve& c, double p, double q) {
  return std::isinf(q) ? weak_norm(c, p) : strong_norm(c, p, q);
}

}  // namespace

LorentzNormResult lorentz_norm(const RearrangementCurve& curve, double p,
                               double q) {
  check_indices(p, q);
  LorentzNormResult out;
  out.p = p;
  out.q = q;
  out.method = "empirical";
  out.value = curve_norm(curve, p, q);
  if (curve.variants.size() == 2) {
    const double a = curve_norm(curve.variants[0], p, q);
    const double b = curve_norm(curve.variants[1], p, q);
    if (curve.spread == RearrangementCurve::Spread::Bracket) {
      out.error_bound = std::max(std::fabs(out.value - a), std::fabs(b - out.value));
    } else {
      out.error_bound = std::fabs(a - b);
    }
  }
  return out;
}

LorentzNormResult power_law_lorentz_norm(int n, double s, double p, double q,
                                         double radius, double coefficient) {
  check_indices(p, q);
  if (n < 1) throw UnsupportedDimension("dimension must be positive");
  if (!(s > 0.0) || !(s < n)) {
    throw DomainError("power-law norms need 0 < s < n");
  }
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  const double b = ball_volume(n);
  const double a = s / n;
  const double C = std::fabs(coefficient) * std::pow(b, a) / (1.0 - a);
  const double T = b * std::pow(radius, n);  // +inf on R^n
  const double ip = 1.0 / p;
  // t^{1/p} f**(t)
  const auto g = [&](double t) {
    if (t <= T) return C * std::pow(t, ip - a);
    return C * std::pow(T, 1.0 - a) * std::pow(t, ip - 1.0);
  };

  LorentzNormResult out;
  out.p = p;
  out.q = q;
  out.method = "exact-radial";

  bool finite = true;
  bool at_origin = true;
  if (ip < a) {
    finite = false;
  } else if (std::isinf(q)) {
    finite = std::isfinite(T) || ip == a;
  } else {
    finite = ip > a && std::isfinite(T);
    at_origin = ip <= a;
  }
  if (finite) {
    if (std::isinf(q)) {
      out.value = std::isfinite(T) ? C * std::pow(T, ip - a) : C;
    } else {
      const double inner = std::pow(C, q) * std::pow(T, q * (ip - a)) / (q * (ip - a));
      const double M = C * std::pow(T, 1.0 - a);
      const double outer = std::pow(M, q) * std::pow(T, q * (ip - 1.0)) / (q * (1.0 - ip));
      out.value = std::pow(inner + outer, 1.0 / q);
    }
    return out;
  }

  // evidence: dyadic pieces of the defining integral (or the sup) in t
  const double anchor = std::isfinite(T) ? T : b;
  std::vector<double> incs;
  double partial = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double lo = at_origin ? anchor * std::ldexp(1.0, -k - 1) : anchor * std::ldexp(1.0, k);
    const double hi = 2.0 * lo;
    double inc;
    if (std::isinf(q)) {
      inc = g(at_origin ? lo : hi);
    } else {
      inc = integrate([&](double u) { return std::pow(g(std::exp(u)), q); },
                      std::log(lo), std::log(hi))
                .value;
    }
    partial += inc;
    incs.push_back(inc);
    out.increments.push_back({k, lo, hi, inc, partial});
  }
  const DivergenceVerdict v = detect_divergence(incs, 0.0);
  out.verdict = v.verdict == Verdict::Divergent ? Verdict::Divergent : Verdict::Inconclusive;
  out.value = std::numeric_limits<double>::quiet_NaN();
  out.error_bound = kInf;
  return out;
}

double lebesgue_norm(const WeightedSampleSet& samples, double p) {
  if (!(p >= 1.0)) throw IndexError("Lebesgue index must be >= 1");
  std::vector<double> terms;
  terms.reserve(samples.size());
  for (const auto& e : samples.entries()) {
    if (std::isinf(p)) {
      terms.push_back(e.value);
    } else {
      terms.push_back(e.weight * std::pow(e.value, p));
    }
  }
  if (std::isinf(p)) {
    return terms.empty() ? 0.0 : *std::max_element(terms.begin(), terms.end());
  }
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

WeightedSampleSet product(const WeightedSampleSet& a, const WeightedSampleSet& b) {
  if (a.size() != b.size()) {
    throw ConfigError("product needs sample sets over the same cells");
  }
  WeightedSampleSet out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.entries()[i];
    const auto& y = b.entries()[i];
    if (x.weight != y.weight) {
      throw ConfigError("product needs sample sets over the same cells");
    }
    out.add(x.value * y.value, x.weight, x.lower * y.lower, x.upper * y.upper);
  }
  return out;
}

double holder_constant(double p) {
  if (!(p > 1.0)) throw IndexError("Hoelder constant needs p > 1");
  return p / (p - 1.0);
}

std::vector<WeightedSampleSet> piecewise_constant_corpus(std::size_t count,
                                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> steps(1, 12);
  std::uniform_real_distribution<double> value(0.0, 10.0), measure(0.01, 2.0),
      coin(0.0, 1.0);
  std::vector<WeightedSampleSet> out;
  for (std::size_t i = 0; i < count; ++i) {
    WeightedSampleSet set;
    const int k = steps(rng);
    double last = value(rng);
    for (int j = 0; j < k; ++j) {
      const double c = coin(rng);
      const double v = c < 0.15 ? last : (c < 0.25 ? 0.0 : value(rng));
      set.add(v, measure(rng));
      last = v;
    }
    out.push_back(std::move(set));
  }
  return out;
}

WeightedSampleSet sample_radial(const RadialScalar& h, int n,
                                std::span<const double> center, double inner,
                                double outer, const RadialGrid& grid) {
  for (double c : center) {
    if (c != 0.0) {
      throw DomainError("sample_radial needs an origin-centred region; use sample_grid");
    }
  }
  if (n < 1) throw UnsupportedDimension("dimension must be positive");
  if (!(inner >= 0.0) || !(outer > inner) || !std::isfinite(outer)) {
    throw ConfigError("sample_radial needs 0 <= inner < outer < inf");
  }
  if (grid.cells < 1) throw ConfigError("sample_radial needs at least one cell");
  const double b = ball_volume(n);
  WeightedSampleSet out;
  double start = inner;
  if (inner == 0.0) {
    start = outer * grid.core_ratio;
    const double v = h(start);
    out.add(v, b * std::pow(start, n));
  }
  const double l0 = std::log(start), l1 = std::log(outer);
  const std::size_t m = grid.cells;
  double left_r = start, left_v = h(start);
  for (std::size_t i = 0; i < m; ++i) {
    const double right_r = i + 1 == m ? outer : std::exp(l0 + (l1 - l0) * (i + 1) / m);
    const double right_v = h(right_r);
    const double mid_v = h(std::sqrt(left_r * right_r));
    // b_n (r1^n - r0^n) without cancellation
    const double weight = b * std::pow(left_r, n) * std::expm1(n * std::log(right_r / left_r));
    out.add(mid_v, weight, std::min({left_v, right_v, mid_v}),
            std::max({left_v, right_v, mid_v}));
    left_r = right_r;
    left_v = right_v;
  }
  return out;
}

namespace {

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return out;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

std::vector<double> ball_points(int n, std::span<const double> center, double radius,
                                std::size_t count, std::uint64_t seed) {
  if (n < 1 || n > static_cast<int>(std::size(kPrimes))) {
    throw UnsupportedDimension("sample_grid supports 1 <= n <= 12");
  }
  if (static_cast<int>(center.size()) != n) {
    throw DomainError("centre has the wrong dimension");
  }
  if (!(radius > 0.0)) throw ConfigError("ball radius must be positive");
  if (count < 2) throw ConfigError("sample_grid needs at least two points");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> shift(n);
  for (auto& s : shift) s = unit(rng);

  std::vector<double> out;
  out.reserve(count * n);
  std::vector<double> u(n);
  std::uint64_t index = 1;
  std::size_t accepted = 0;
  while (accepted < count) {
    double r2 = 0.0;
    for (int d = 0; d < n && r2 <= 1.0; ++d) {
      double v = radical_inverse(index, kPrimes[d]) + shift[d];
      v -= std::floor(v);
      u[d] = 2.0 * v - 1.0;
      r2 += u[d] * u[d];
    }
    ++index;
    if (r2 > 1.0) continue;
    for (int d = 0; d < n; ++d) out.push_back(center[d] + radius * u[d]);
    ++accepted;
  }
  return out;
}

WeightedSampleSet sample_points(const PointScalar& f, int n, std::span<const double> points,
                                double measure) {
  const std::size_t count = points.size() / n;
  if (count < 2) throw ConfigError("sample_points needs at least two points");
  const double weight = measure / static_cast<double>(count);
  WeightedSampleSet out;
  for (std::size_t i = 0; i < count; ++i) {
    out.add_replicate(f(points.subspan(i * n, n)), weight, static_cast<int>(i % 2));
  }
  return out;
}

WeightedSampleSet sample_grid(const PointScalar& f, int n,
                              std::span<const double> center, double radius,
                              std::size_t count, std::uint64_t seed) {
  const std::vector<double> pts = ball_points(n, center, radius, count, seed);
  return sample_points(f, n, pts, ball_volume(n) * std::pow(radius, n));
}

RadialScalar gradient_magnitude(const FieldSpec& field) {
  if (!field.is_radial()) throw FamilyMismatch("gradient_magnitude needs a radial field");
  return [field](double r) {
    double s = 0.0;
    for (const auto& j : radial_jets(field, r, 1)) s += j.d[1] * j.d[1];
    return std::sqrt(s);
  };
}

RadialScalar hessian_magnitude(const FieldSpec& field) {
  if (!field.is_radial()) throw FamilyMismatch("hessian_magnitude needs a radial field");
  const int n = field.n();
  return [field, n](double r) {
    double s = 0.0;
    for (const auto& j : radial_jets(field, r, 2)) {
      const double t = j.d[1] / r;
      s += j.d[2] * j.d[2] + (n - 1) * t * t;
    }
    return std::sqrt(s);
  };
}

PointScalar gradient_magnitude_at(const FieldSpec& field) {
  return [field](std::span<const double> x) {
    return eval_jet(field, x, 1).gradient_norm();
  };
}

PointScalar hessian_magnitude_at(const FieldSpec& field) {
  return [field](std::span<const double> x) {
    return eval_jet(field, x, 2).hessian_norm();
  };
}

}  // namespace reglab
