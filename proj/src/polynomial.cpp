#include "reglab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n);
  p.add_term(MultiIndex(n, 0), c);
  return p;
}

Polynomial Polynomial::monomial(int n, const MultiIndex& exponents,
                                double coef) {
  if (static_cast<int>(exponents.size()) != n) {
    throw ConfigError("monomial exponent vector has the wrong length");
  }
  Polynomial p(n);
  p.add_term(exponents, coef);
  return p;
}

Polynomial Polynomial::norm_squared(int n) {
  Polynomial p(n);
  for (int i = 0; i < n; ++i) {
    MultiIndex e(n, 0);
    e[i] = 2;
    p.add_term(e, 1.0);
  }
  return p;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  }
  return deg;
}

bool Polynomial::is_zero(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return std::fabs(t.second) <= tol; });
}

void Polynomial::add_term(const MultiIndex& exponents, double coef) {
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.emplace(exponents, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::operator()(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    }
    sum += m;
  }
  return sum;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    MultiIndex d = e;
    d[var] -= 1;
    out.add_term(d, c * e[var]);
  }
  return out;
}

Polynomial Polynomial::derivative(std::span<const int> vars) const {
  Polynomial out = *this;
  for (int v : vars) out = out.derivative(v);
  return out;
}

Polynomial Polynomial::laplacian() const {
  Polynomial out(n_);
  for (int i = 0; i < n_; ++i) out = out + derivative(i).derivative(i);
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  if (out.n_ == 0) out.n_ = other.n_;
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other * -1.0;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out(std::max(n_, other.n_));
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) {
      MultiIndex e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(double s) const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * s);
  return out;
}

double ball_moment(const MultiIndex& alpha, double radius) {
  const int n = static_cast<int>(alpha.size());
  int total = 0;
  double log_num = 0.0;
  for (int a : alpha) {
    if (a % 2 != 0) return 0.0;
    total += a;
    log_num += std::lgamma(0.5 * (a + 1));
  }
  // int_{S^{n-1}} x^alpha = 2 prod Gamma((a_i+1)/2) / Gamma((|a|+n)/2)
  const double sphere = 2.0 * std::exp(log_num - std::lgamma(0.5 * (total + n)));
  return sphere * std::pow(radius, total + n) / (total + n);
}

double Polynomial::integrate_ball(double radius) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c * ball_moment(e, radius);
  return sum;
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::fabs(c));
  return m;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    os << std::fabs(c);
    for (int i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      os << "*x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace reglab
