#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace reglab {

using MultiIndex = std::vector<int>;

/// Real polynomial in n variables, stored as a sparse monomial map.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}

  static Polynomial constant(int n, double c);
  static Polynomial monomial(int n, const MultiIndex& exponents,
                             double coef = 1.0);
  /// |x|^2
  static Polynomial norm_squared(int n);

  int dim() const { return n_; }
  int degree() const;
  bool is_zero(double tol = 0.0) const;
  const std::map<MultiIndex, double>& terms() const { return terms_; }

  void add_term(const MultiIndex& exponents, double coef);

  double operator()(std::span<const double> x) const;
  Polynomial derivative(int var) const;
  /// Mixed partial derivative along the listed variables.
  Polynomial derivative(std::span<const int> vars) const;
  Polynomial laplacian() const;
  Polynomial bilaplacian() const { return laplacian().laplacian(); }

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  /// Exact integral over the ball of radius `radius` centred at the origin.
  double integrate_ball(double radius) const;

  /// Largest absolute coefficient.
  double max_abs_coefficient() const;
  std::string to_string() const;

 private:
  int n_ = 0;
  std::map<MultiIndex, double> terms_;
};

/// Integral of x^alpha over the ball B_R(0) in R^n.
double ball_moment(const MultiIndex& alpha, double radius);

}  // namespace reglab
