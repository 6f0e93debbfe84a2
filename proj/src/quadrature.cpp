#include "reglab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"

namespace reglab {

namespace {

// Kronrod 15-point abscissae and weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

Panel kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }
  const double result = resk * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);
  double err = std::fabs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
  return {a, b, result, err};
}

double target(const QuadratureOptions& o, double value) {
  return std::max(o.abs_tol, o.tol * std::fabs(value));
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& options,
                          std::size_t budget) {
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  heap.push(kronrod15(f, a, b));
  double total = heap.top().value;
  double error = heap.top().error;
  std::size_t panels = 1;
  std::vector<Panel> frozen;  // panels too narrow to split further
  while (error > target(options, total) && panels < budget && !heap.empty()) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::fabs(worst.b - worst.a) <=
            16.0 * kEps * std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = kronrod15(f, worst.a, mid);
    const Panel right = kronrod15(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    ++panels;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (error <= target(options, total)) {
      // confirm against a fresh sum before stopping
      double t = 0.0, e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        t += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      for (const auto& p : frozen) {
        t += p.value;
        e += p.error;
      }
      total = t;
      error = e;
    }
  }
  std::vector<Panel> all = std::move(frozen);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> values, errors;
  values.reserve(all.size());
  errors.reserve(all.size());
  for (const auto& p : all) {
    values.push_back(p.value);
    errors.push_back(p.error);
  }
  QuadratureResult result;
  result.value = pairwise_sum(values);
  result.error_estimate = pairwise_sum(errors);
  result.subdivisions = panels;
  result.verdict = result.error_estimate <= target(options, result.value) &&
                           std::isfinite(result.value)
                       ? Verdict::Converged
                       : Verdict::Inconclusive;
  return result;
}

double least_squares_slope(std::span<const double> x,
                           std::span<const double> y) {
  const std::size_t m = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "Converged";
    case Verdict::Divergent: return "Divergent";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

DivergenceVerdict detect_divergence(std::span<const double> increments,
                                    double tail_target,
                                    const DivergenceOptions& options) {
  DivergenceVerdict out;
  const int count = static_cast<int>(increments.size());
  if (count < options.min_increments || count < options.window) {
    out.description = "too few increments";
    return out;
  }
  std::vector<double> window;
  std::vector<double> log_k, log_a;
  bool one_sign = true;
  for (int j = count - options.window; j < count; ++j) {
    if (j > count - options.window && increments[j] * increments[j - 1] < 0.0) {
      one_sign = false;
    }
    const double a = std::fabs(increments[j]);
    window.push_back(a);
    if (a > 0.0) {
      log_k.push_back(std::log(j + 1.0));
      log_a.push_back(std::log(a));
    }
  }
  const double hi = *std::max_element(window.begin(), window.end());
  const double lo = *std::min_element(window.begin(), window.end());
  if (hi == 0.0) {
    out.verdict = Verdict::Converged;
    out.description = "vanishing increments";
    return out;
  }
  bool growing = true;
  double max_ratio = 0.0;
  for (std::size_t j = 1; j < window.size(); ++j) {
    const double ratio =
        window[j - 1] > 0.0 ? window[j] / window[j - 1]
                            : std::numeric_limits<double>::infinity();
    max_ratio = std::max(max_ratio, window[j] == 0.0 ? 0.0 : ratio);
    if (!(window[j] >= window[j - 1])) growing = false;
  }
  out.max_ratio = max_ratio;
  out.decay_exponent =
      log_k.size() >= 2 ? -least_squares_slope(log_k, log_a) : 0.0;
  std::ostringstream why;
  if (growing && one_sign && window.back() > 0.0) {
    out.verdict = Verdict::Divergent;
    why << "increments nondecreasing over the last " << options.window
        << " annuli (last " << window.back() << ")";
  } else if (one_sign && lo / hi >= options.flat_ratio &&
             out.decay_exponent <= options.max_decay_exponent) {
    out.verdict = Verdict::Divergent;
    why << "increments bounded below by " << lo << " (decay exponent "
        << out.decay_exponent << ")";
  } else if (max_ratio <= options.geometric_ratio) {
    const double bound = window.back() * max_ratio / (1.0 - max_ratio);
    out.tail_bound = bound;
    if (bound <= tail_target) {
      out.verdict = Verdict::Converged;
      why << "geometric decay, ratio " << max_ratio << ", tail bound " << bound;
    } else {
      why << "geometric decay, tail bound " << bound << " above target";
    }
  } else {
    why << "neither geometric decay nor a positive lower bound (max ratio "
        << max_ratio << ", decay exponent " << out.decay_exponent << ")";
  }
  out.description = why.str();
  return out;
}

QuadratureResult integrate_nothrow(const std::function<double(double)>& f,
                                   double a, double b,
                                   const QuadratureOptions& options) {
  if (a == b) return {};
  if (b < a) {
    QuadratureResult r = integrate_nothrow(f, b, a, options);
    r.value = -r.value;
    return r;
  }
  return adaptive(f, a, b, options, options.max_panels);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options) {
  QuadratureResult r = integrate_nothrow(f, a, b, options);
  if (!r.converged()) {
    std::ostringstream os;
    os << "quadrature on [" << a << ", " << b << "] did not reach tolerance "
       << options.tol << " within " << options.max_panels
       << " panels (estimate " << r.value << " +- " << r.error_estimate << ")";
    throw ToleranceNotMet(os.str());
  }
  return r;
}

RadialIntegrand RadialIntegrand::from_radius(std::function<double(double)> h,
                                             int n) {
  RadialIntegrand out;
  out.at_radius = h;
  out.at_log_radius = [h, n](double t) {
    const double r = std::exp(t);
    if (r == 0.0) return 0.0;
    return h(r) * std::exp(n * t);
  };
  return out;
}

RadialIntegrand RadialIntegrand::from_log_radius(
    std::function<double(double)> w) {
  RadialIntegrand out;
  out.at_log_radius = std::move(w);
  return out;
}

QuadratureResult integrate_radial(const RadialIntegrand& h, double a, double b,
                                  int n, const QuadratureOptions& options) {
  if (!(a >= 0.0) || !(b > a)) {
    throw ConfigError("integrate_radial needs 0 <= a < b");
  }
  if (n < 1) throw UnsupportedDimension("dimension must be positive");
  const double area = sphere_area(n);
  const auto w = [&](double t) { return area * h.at_log_radius(t); };

  if (a > 0.0) return integrate(w, std::log(a), std::log(b), options);

  const double log_b = std::log(b);
  // Remaining ball below tau_k on a compactified axis, tau = tau_k - s / (1 - s).
  const auto tail_from = [&](double tau_k, double scale) {
    const auto tail = [&, tau_k](double s) {
      const double one_minus = 1.0 - s;
      const double value = w(tau_k - s / one_minus);
      return value == 0.0 ? 0.0 : value / (one_minus * one_minus);
    };
    QuadratureOptions tail_opts = options;
    tail_opts.tol = options.tol / 2.0;
    tail_opts.abs_tol = std::max(options.abs_tol / 2.0, 0.25 * options.tol * scale);
    tail_opts.max_panels = std::min(options.max_panels, options.max_tail_panels);
    return integrate_nothrow(tail, 0.0, 1.0, tail_opts);
  };

  QuadratureOptions panel_opts = options;
  panel_opts.tol = options.tol / 4.0;
  QuadratureResult out;
  std::vector<double> incs;
  double sum = 0.0, err = 0.0, abs_sum = 0.0;
  for (int k = 0; k < options.max_dyadic; ++k) {
    const double hi = log_b - k * std::numbers::ln2;
    const double lo = hi - std::numbers::ln2;
    panel_opts.abs_tol = std::max(options.abs_tol / 4.0, 0.25 * options.tol * abs_sum);
    const QuadratureResult piece = integrate(w, lo, hi, panel_opts);
    incs.push_back(piece.value);
    sum += piece.value;
    abs_sum += std::fabs(piece.value);
    err += piece.error_estimate;
    out.subdivisions += piece.subdivisions;
    out.increments.push_back(
        {k, std::exp(lo), std::exp(hi), piece.value, sum});
    if (k + 1 < options.divergence.min_increments) continue;
    const double tail_target =
        0.5 * std::max(options.abs_tol, options.tol * std::fabs(sum));
    const DivergenceVerdict v =
        detect_divergence(incs, tail_target, options.divergence);
    if (v.verdict == Verdict::Divergent) {
      // slowly modulated integrands can mimic growth over a short window;
      // only a tail that cannot be integrated confirms divergence
      const QuadratureResult t = tail_from(lo, abs_sum);
      out.subdivisions += t.subdivisions;
      if (t.converged()) {
        out.value = sum + t.value;
        out.error_estimate = err + t.error_estimate;
        out.verdict = Verdict::Converged;
        return out;
      }
      out.verdict = Verdict::Divergent;
      out.value = std::numeric_limits<double>::quiet_NaN();
      out.error_estimate = std::numeric_limits<double>::infinity();
      out.growth = v.description;
      return out;
    }
    if (v.verdict == Verdict::Converged &&
        err + v.tail_bound <= target(options, sum)) {
      out.value = sum;
      out.error_estimate = err + v.tail_bound;
      out.verdict = Verdict::Converged;
      return out;
    }
  }
  const double tau_k = log_b - options.max_dyadic * std::numbers::ln2;
  const QuadratureResult t = tail_from(tau_k, abs_sum);
  out.subdivisions += t.subdivisions;
  if (!t.converged()) {
    std::ostringstream os;
    os << "radial integral near the origin neither converged nor diverged: "
       << "tail estimate " << t.value << " +- " << t.error_estimate
       << " after " << options.max_dyadic << " dyadic annuli";
    throw ToleranceNotMet(os.str());
  }
  out.value = sum + t.value;
  out.error_estimate = err + t.error_estimate;
  out.verdict = Verdict::Converged;
  return out;
}

double cap_fraction(int n, double rho, double d, double r) {
  if (rho <= r - d) return 1.0;
  if (rho >= r + d || rho <= d - r) return 0.0;
  double c = (rho * rho + d * d - r * r) / (2.0 * rho * d);
  c = std::clamp(c, -1.0, 1.0);
  const double theta = std::acos(c);
  const double s2 = std::sin(theta) * std::sin(theta);
  const double half_cap = 0.5 * boost::math::ibeta(0.5 * (n - 1), 0.5, s2);
  return theta <= 0.5 * std::numbers::pi ? half_cap : 1.0 - half_cap;
}

QuadratureResult integrate_offcenter_ball(const RadialIntegrand& h, double d,
                                          double r, int n,
                                          const QuadratureOptions& options) {
  if (!(r > 0.0) || d < 0.0) throw ConfigError("ball needs r > 0, |x0| >= 0");
  if (d == 0.0) return integrate_radial(h, 0.0, r, n, options);

  const auto weighted = [&h, d, r, n](double t) {
    const double a = cap_fraction(n, std::exp(t), d, r);
    return a == 0.0 ? 0.0 : a * h.at_log_radius(t);
  };
  const RadialIntegrand capped = RadialIntegrand::from_log_radius(weighted);

  QuadratureResult total;
  QuadratureOptions half = options;
  half.tol = options.tol / 2.0;
  if (d < r) {
    total = integrate_radial(h, 0.0, r - d, n, half);
    if (!total.converged()) return total;
    const QuadratureResult shell = integrate_radial(capped, r - d, r + d, n, half);
    total.value += shell.value;
    total.error_estimate += shell.error_estimate;
    total.subdivisions += shell.subdivisions;
    return total;
  }
  if (d == r) return integrate_radial(capped, 0.0, 2.0 * r, n, options);
  return integrate_radial(capped, d - r, d + r, n, options);
}

double sphere_mean(const std::function<double(double, double)>& F, double rho,
                   int n, double cos_min, double tol) {
  if (cos_min >= 1.0) return 0.0;
  const double theta_max =
      cos_min <= -1.0 ? std::numbers::pi : std::acos(cos_min);
  const auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    return F(rho, std::cos(theta)) * std::pow(s, n - 2);
  };
  QuadratureOptions opts;
  opts.tol = tol;
  opts.abs_tol = 1e-300;
  opts.max_panels = 4096;
  const double num = integrate_nothrow(integrand, 0.0, theta_max, opts).value;
  // int_0^pi sin^{n-2} = sqrt(pi) Gamma((n-1)/2) / Gamma(n/2)
  const double den = std::sqrt(std::numbers::pi) *
                     std::exp(std::lgamma(0.5 * (n - 1)) - std::lgamma(0.5 * n));
  return num / den;
}

}  // namespace reglab
