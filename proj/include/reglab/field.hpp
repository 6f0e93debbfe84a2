#pragma once

#include <limits>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "reglab/polynomial.hpp"
#include "reglab/profile.hpp"

namespace reglab {

enum class Family {
  LogLog4D,
  SinLogSecondOrder,
  SinLogFourthOrder,
  FundamentalLaplace,
  FundamentalBilap,
  HarmonicPoly,
  BiharmonicPoly,
  PowerLaw,
  Custom,
};

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// Fully symmetric rank-m tensor over R^n, one entry per sorted multi-index.
class SymmetricTensor {
 public:
  SymmetricTensor() = default;
  SymmetricTensor(int dim, int rank);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  double at(std::span<const int> idx) const { return data_[offset(idx)]; }
  double& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const std::vector<double>& data() const { return data_; }

  /// Storage slot of an arbitrary (unsorted) multi-index.
  std::size_t offset(std::span<const int> idx) const;
  /// Sorted multi-indices in storage order.
  std::vector<std::vector<int>> indices() const;

 private:
  int dim_ = 0;
  int rank_ = 0;
  std::vector<double> data_;
};

/// Values and spatial derivatives of a field R^n -> R^K at one point.
struct JetBundle {
  std::vector<double> point;
  int n = 0;
  int K = 0;
  int order = 0;
  std::vector<double> values;    // K
  std::vector<double> gradient;  // K x n
  std::vector<double> hessian;   // K x n x n
  std::vector<SymmetricTensor> third;   // K, present for order >= 3
  std::vector<SymmetricTensor> fourth;  // K, present for order >= 4

  double grad(int c, int i) const { return gradient[c * n + i]; }
  double hess(int c, int i, int j) const { return hessian[(c * n + i) * n + j]; }
  double laplacian(int c) const;
  double bilaplacian(int c) const;
  double gradient_norm() const;
  double hessian_norm() const;
};

/// Radial domain {r_min <= |x| <= r_max} on which a field may be evaluated.
struct RadialDomain {
  double r_min = 1e-12;
  double r_max = std::numeric_limits<double>::infinity();
};

/// A vector field R^n -> R^K given by radial profiles or polynomials.
class FieldSpec {
 public:
  struct Radial {
    std::vector<RadialProfile> components;
  };
  struct Poly {
    std::vector<Polynomial> components;
  };

  FieldSpec(int n, Family family, Radial radial, RadialDomain domain = {},
            std::map<std::string, double> params = {});
  FieldSpec(int n, Family family, Poly poly,
            std::map<std::string, double> params = {});

  int n() const { return n_; }
  int K() const { return K_; }
  Family family() const { return family_; }
  const RadialDomain& domain() const { return domain_; }
  const std::map<std::string, double>& params() const { return params_; }
  double param(const std::string& key) const;

  bool is_radial() const { return std::holds_alternative<Radial>(kind_); }
  const std::vector<RadialProfile>& profiles() const;
  const std::vector<Polynomial>& polynomials() const;

  /// Copy with a different evaluation domain.
  FieldSpec with_domain(RadialDomain domain) const;
  /// Copy with one component multiplied by `factor`, tagged Custom.
  FieldSpec perturbed(int component, double factor) const;

  /// Throws DomainError if |x| lies outside the domain.
  void check_point(std::span<const double> x) const;

 private:
  int n_;
  int K_;
  Family family_;
  std::variant<Radial, Poly> kind_;
  RadialDomain domain_;
  std::map<std::string, double> params_;
};

/// Closed-form jet of `field` at `x` up to `order` (0..4).
JetBundle eval_jet(const FieldSpec& field, std::span<const double> x, int order);

/// Per-component radial jets at radius r. Radial fields only.
std::vector<RadialJet> radial_jets(const FieldSpec& field, double r, int order);
/// Same, addressed by log r and without the domain check.
std::vector<RadialJet> radial_jets_log(const FieldSpec& field, double log_r,
                                       int order);

namespace catalog {

/// u = (sin log log 1/|x|, cos log log 1/|x|) on |x| <= e^{-2} in R^4.
FieldSpec loglog4d();
/// u = (sin((2-n) log|x|), cos((2-n) log|x|)), n >= 3.
FieldSpec sinlog_second_order(int n);
/// u = (sin((4-n) log|x|), cos((4-n) log|x|)), n >= 5.
FieldSpec sinlog_fourth_order(int n);
/// u = c |x|^alpha.
FieldSpec power_law(int n, double alpha, double coefficient = 1.0);
/// Scalar polynomial field.
FieldSpec polynomial(Polynomial p, Family family = Family::Custom);
/// Scalar radial field from a closed-form chain.
FieldSpec custom_radial(int n, std::vector<RadialProfile> components,
                        RadialDomain domain = {});

}  // namespace catalog

/// Fundamental solution of the Laplacian (order 2, n >= 3) or of the
/// bilaplacian (order 4, n >= 5). The bilaplacian constant is calibrated
/// numerically; see `bilaplacian_calibration`.
FieldSpec fundamental_solution(int n, int operator_order);

struct BilapCalibration {
  double c_n = 0.0;
  double residual = 0.0;  // |c_n int |x|^{4-n} lap^2 phi - phi(0)| / phi(0)
};

/// Fixes c_n so that int Psi lap^2 phi = phi(0) for the reference bump
/// (1 - |x|^2)^5.
BilapCalibration bilaplacian_calibration(int n);

/// Value of int_{R^n} Psi(x) lap^2 phi(x) dx for a radial bump profile
/// supported in B_radius.
double bilaplacian_pairing(int n, double c_n, const ChainProfile& bump,
                           double radius);

enum class CorpusKind { Harmonic, Biharmonic };

/// Polynomial (bi)harmonic fields of degree <= max_degree (<= 4), each
/// verified by symbolic Laplacian at construction.
std::vector<FieldSpec> comparison_corpus(CorpusKind kind, int n, int max_degree);

}  // namespace reglab
