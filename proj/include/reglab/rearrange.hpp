#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "reglab/field.hpp"
#include "reglab/quadrature.hpp"

namespace reglab {

/// Value distribution of |f| on a domain: (value, measure) pairs.
///
/// Optional per-entry brackets lower <= value <= upper describe how far the
/// entry may sit from the true function on its cell; optional replicate tags
/// split the set into two independent half-samples.
class WeightedSampleSet {
 public:
  struct Entry {
    double value;
    double weight;
    double lower;
    double upper;
    int replicate;
  };

  /// Absolute value of `value` is stored. Throws DomainError if weight <= 0.
  void add(double value, double weight);
  void add(double value, double weight, double lower, double upper);
  void add_replicate(double value, double weight, int replicate);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double total_measure() const;

  bool has_brackets() const { return bracketed_; }
  bool has_replicates() const { return replicated_; }

  /// Set with every entry replaced by its lower (resp. upper) bracket.
  WeightedSampleSet lower_set() const;
  WeightedSampleSet upper_set() const;
  /// Entries of one replicate, weights rescaled to the full total measure.
  WeightedSampleSet replicate(int tag) const;

 private:
  std::vector<Entry> entries_;
  bool bracketed_ = false;
  bool replicated_ = false;
};

/// mu{|f| > lambda}. Throws DomainError for lambda < 0.
double distribution_function(const WeightedSampleSet& samples, double lambda);

/// f* as a step function: fstar[k] on (knots[k-1], knots[k]] (knots[-1] = 0),
/// and f** at each knot.
struct RearrangementCurve {
  std::vector<double> knots;
  std::vector<double> fstar;
  std::vector<double> fstarstar;
  double total_measure = 0.0;
  /// {lower, upper} bracket curves, or {half 0, half 1} replicate curves.
  enum class Spread { None, Bracket, Replicate } spread = Spread::None;
  std::vector<RearrangementCurve> variants;

  /// Right-continuous f*(t); zero beyond the total measure.
  double fstar_at(double t) const;
  /// f**(t) for any t > 0.
  double fstarstar_at(double t) const;
  /// mu{f* > lambda} for Lebesgue measure on (0, total_measure].
  double distribution(double lambda) const;

  void write_csv(std::ostream& os) const;
};

/// Sort-based rearrangement. Throws EmptyInput.
RearrangementCurve decreasing_rearrangement(const WeightedSampleSet& samples);

struct LorentzNormResult {
  double p = 0.0;
  double q = 0.0;  // +inf for the weak space
  double value = 0.0;
  double error_bound = 0.0;
  std::string method;  // "exact-radial" | "empirical"
  Verdict verdict = Verdict::Converged;
  std::vector<DyadicIncrement> increments;  // divergence evidence

  bool finite() const { return verdict == Verdict::Converged; }
};

/// ||f||_{L^{p,q}} built on f**. q may be +inf. Throws IndexError unless
/// 1 < p < inf and 1 <= q <= inf.
LorentzNormResult lorentz_norm(const RearrangementCurve& curve, double p,
                               double q);

/// Exact norm of c|x|^{-s} on B_radius (radius may be +inf) in R^n.
/// Infinite norms come back Divergent together with the constant dyadic
/// increments of the defining integral.
LorentzNormResult power_law_lorentz_norm(int n, double s, double p, double q,
                                         double radius, double coefficient = 1.0);

/// (sum w |v|^p)^{1/p} by exact summation.
double lebesgue_norm(const WeightedSampleSet& samples, double p);

/// Entrywise product of two sample sets over the same cells (equal weights).
WeightedSampleSet product(const WeightedSampleSet& a, const WeightedSampleSet& b);

/// Constant in ||fg||_{L^{p,q}} <= C ||f||_{L^{p1,q1}} ||g||_{L^{p2,q2}},
/// 1/p = 1/p1 + 1/p2, 1/q = 1/q1 + 1/q2 (Hardy's inequality gives p/(p-1)).
double holder_constant(double p);

/// Random step functions: 1 to 12 steps with values in [0, 10), some tied
/// or zero, and cell measures in [0.01, 2).
std::vector<WeightedSampleSet> piecewise_constant_corpus(std::size_t count,
                                                         std::uint64_t seed);

using RadialScalar = std::function<double(double)>;
using PointScalar = std::function<double(std::span<const double>)>;

struct RadialGrid {
  std::size_t cells = 1 << 12;
  /// Innermost radius of the log grid relative to the outer radius when the
  /// region contains the origin; the core ball below it is one entry.
  double core_ratio = 1e-12;
};

/// Log-spaced radial cells of the shell inner <= |x - center| <= outer.
/// Each cell carries its endpoint values as brackets. Throws DomainError for
/// a nonzero center.
WeightedSampleSet sample_radial(const RadialScalar& h, int n,
                                std::span<const double> center, double inner,
                                double outer, const RadialGrid& grid = {});

/// Equal-weight low-discrepancy points in B_radius(center), alternating
/// between two replicates. The Halton sequence is shifted by `seed`.
WeightedSampleSet sample_grid(const PointScalar& f, int n,
                              std::span<const double> center, double radius,
                              std::size_t count, std::uint64_t seed = 0);

/// The points sample_grid uses, row-major count x n.
std::vector<double> ball_points(int n, std::span<const double> center, double radius,
                                std::size_t count, std::uint64_t seed = 0);
/// Equal weights summing to `measure` at precomputed points.
WeightedSampleSet sample_points(const PointScalar& f, int n, std::span<const double> points,
                                double measure);

/// |grad u| and |hess u| of a radial field as functions of r.
RadialScalar gradient_magnitude(const FieldSpec& field);
RadialScalar hessian_magnitude(const FieldSpec& field);
/// Same at a point, for any field.
PointScalar gradient_magnitude_at(const FieldSpec& field);
PointScalar hessian_magnitude_at(const FieldSpec& field);

}  // namespace reglab
