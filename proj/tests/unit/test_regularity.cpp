#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"
#include "reglab/regularity.hpp"

using namespace reglab;

namespace {

FieldSpec linear_field(int n) {
  Polynomial p(n);
  MultiIndex e(n, 0);
  e[0] = 1;
  p.add_term(e, 1.0);
  return catalog::polynomial(p);
}

std::vector<double> halving_radii(double r0, int count) {
  std::vector<double> out;
  for (int l = 0; l < count; ++l) out.push_back(r0 * std::pow(0.5, l));
  return out;
}

}  // namespace

TEST(Fit, ExactLine) {
  const std::vector<double> r{1.0, 0.5, 0.25, 0.125};
  std::vector<double> v;
  for (double x : r) v.push_back(3.0 * std::pow(x, 1.7));
  const LogLogFit f = fit_log_log(r, v);
  EXPECT_NEAR(f.slope, 1.7, 1e-12);
  EXPECT_NEAR(std::exp(f.intercept), 3.0, 1e-12);
  EXPECT_LT(f.residual, 1e-12);
  EXPECT_TRUE(f.clean);
  const std::vector<double> noisy{1.0, 5.0, 0.2, 3.0};
  EXPECT_FALSE(fit_log_log(r, noisy).clean);
  EXPECT_THROW(fit_log_log(std::vector<double>{1.0}, std::vector<double>{1.0}), EmptyInput);
}

TEST(Morrey, ConstantGradient) {
  const FieldSpec u = linear_field(4);
  for (double r : {0.05, 0.2}) {
    const std::vector<double> c{0.3, -0.1, 0.0, 0.2};
    EXPECT_NEAR(morrey_subnorm(u, c, r, 2.0).value, ball_volume(4) * r * r, 1e-14);
    EXPECT_NEAR(morrey_subnorm(u, {}, r, 2.0).value, ball_volume(4) * r * r, 1e-14);
  }
  EXPECT_THROW(morrey_subnorm(u, {}, 0.1, 3.0), ConfigError);
}

TEST(Morrey, PowerLawSlope) {
  for (double alpha : {0.3, 0.7}) {
    for (double p : {2.0, 3.0}) {
      const FieldSpec u = catalog::power_law(4, alpha);
      const auto radii = halving_radii(0.1, 8);
      std::vector<double> v;
      for (double r : radii) v.push_back(morrey_subnorm(u, {}, r, p).value);
      EXPECT_NEAR(fit_log_log(radii, v).slope, p * alpha, 0.05);
      // |grad u|^p = alpha^p r^{p(alpha-1)}, closed form on B_r
      const double r = radii[3];
      const double exact = std::pow(r, p - 4) * sphere_area(4) * std::pow(alpha, p) *
                           std::pow(r, p * (alpha - 1) + 4) / (p * (alpha - 1) + 4);
      EXPECT_NEAR(v[3] / exact, 1.0, 1e-9);
    }
  }
}

TEST(Morrey, OffCentreRadial) {
  const FieldSpec u = catalog::power_law(3, 1.0);
  const std::vector<double> c{0.5, 0.0, 0.0};
  // |grad u| = 1
  EXPECT_NEAR(morrey_subnorm(u, c, 0.25, 2.0).value, ball_volume(3) * std::pow(0.25, 2), 1e-9);
}

TEST(Morrey, SingularFamilyDoesNotDecay) {
  const FieldSpec u = catalog::sinlog_second_order(4);
  const MorreyResult m = morrey_subnorm(u, {}, 0.1, 4.0);
  EXPECT_EQ(m.verdict, Verdict::Divergent);
  const double per_decade = sphere_area(4) * std::pow(2.0, 4) * std::log(10.0);
  ASSERT_EQ(m.decade_increments.size(), 6u);
  for (double v : m.decade_increments) EXPECT_NEAR(v / per_decade, 1.0, 1e-9);
}

TEST(LorentzDecay, LinearField) {
  DecayScanConfig cfg;
  cfg.r0 = 0.4;
  cfg.count = 5;
  const ScanReport rep = lorentz_ball_decay(linear_field(4), cfg);
  for (std::size_t i = 0; i < rep.radii.size(); ++i) {
    EXPECT_NEAR(rep.values[i], std::pow(ball_volume(4), 0.25) * rep.radii[i], 1e-12);
  }
  ASSERT_TRUE(rep.fit.has_value());
  EXPECT_NEAR(rep.fit->slope, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(rep.scalars.at("alpha0"), 1.0);
  EXPECT_EQ(rep.scalars.at("halving"), 1.0);
}

TEST(LorentzDecay, SingularFamilyIsDilationInvariant) {
  DecayScanConfig cfg;
  cfg.r0 = 0.1;
  cfg.theta = 0.1;
  cfg.count = 5;
  const ScanReport rep = lorentz_ball_decay(catalog::sinlog_second_order(4), cfg);
  for (double v : rep.values) EXPECT_NEAR(v / rep.values.front(), 1.0, 0.02);
  EXPECT_NEAR(rep.fit->slope, 0.0, 0.02);
  // |grad u| = 2 / r: 2 ||1/|x|||_{L^{4,inf}} = 2 (4/3) b_4^{1/4}
  EXPECT_NEAR(rep.values.front(), 2.0 * 4.0 / 3.0 * std::pow(ball_volume(4), 0.25), 1e-2);
}

TEST(LorentzDecay, PowerLawSlopeFromDilation) {
  DecayScanConfig cfg;
  cfg.r0 = 0.1;
  cfg.count = 6;
  const ScanReport rep = lorentz_ball_decay(catalog::power_law(4, 1.5), cfg);
  // |grad u| scales like r^{1/2}, the L^{4,inf} quasinorm adds r^{4/4}
  EXPECT_NEAR(rep.fit->slope, 1.5, 1e-6);
  EXPECT_TRUE(rep.fit->clean);
}

TEST(LorentzDecay, PairedFourthOrder) {
  DecayScanConfig cfg;
  cfg.r0 = 0.1;
  cfg.count = 4;
  cfg.paired = true;
  const ScanReport rep = lorentz_ball_decay(catalog::sinlog_fourth_order(6), cfg);
  ASSERT_EQ(rep.series.at("hessian").size(), 4u);
  for (double v : rep.values) EXPECT_NEAR(v / rep.values.front(), 1.0, 0.02);
}

TEST(LorentzDecay, ConfigValidation) {
  DecayScanConfig cfg;
  cfg.theta = 1.5;
  EXPECT_THROW(lorentz_ball_decay(linear_field(3), cfg), ConfigError);
  cfg.theta = 0.5;
  cfg.r0 = 0.5;
  EXPECT_THROW(lorentz_ball_decay(catalog::loglog4d(), cfg), DomainError);
  EXPECT_EQ(decay_norm_from_string("morrey"), DecayScanConfig::Norm::Morrey);
  EXPECT_THROW(decay_norm_from_string("sobolev"), ConfigError);
}

TEST(Oscillation, SingularFamilies) {
  const std::vector<double> radii{1e-2, 1e-4, 1e-6, 1e-8};
  for (const auto& f : {catalog::loglog4d(), catalog::sinlog_second_order(4),
                        catalog::sinlog_fourth_order(6)}) {
    const ScanReport rep = oscillation_scan(f, {}, radii);
    for (double v : rep.values) EXPECT_GE(v, 1.9);
  }
  const ScanReport ll = oscillation_scan(catalog::loglog4d(), {}, std::vector<double>{std::exp(-4.0)});
  EXPECT_DOUBLE_EQ(ll.values[0], 2.0);
}

TEST(Oscillation, HolderFields) {
  const auto radii = halving_radii(0.1, 8);
  for (double alpha : {0.3, 0.5, 0.8}) {
    const ScanReport rep = oscillation_scan(catalog::power_law(4, alpha), {}, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      EXPECT_NEAR(rep.values[i], std::pow(radii[i], alpha), 1e-15);
    }
    EXPECT_GE(rep.fit->slope, alpha - 0.05);
  }
  const FieldSpec constant = catalog::custom_radial(3, {profiles::power(0.0, 2.0)});
  for (double v : oscillation_scan(constant, {}, radii).values) EXPECT_EQ(v, 0.0);
  const std::vector<double> c{0.5, 0.0, 0.0};
  const ScanReport off = oscillation_scan(catalog::power_law(3, 1.0), c, std::vector<double>{0.1});
  EXPECT_NEAR(off.values[0], 0.2, 1e-15);
}

TEST(Membership, LogLogInW22) {
  const MembershipVerdict v = sobolev_membership(catalog::loglog4d(), 2, 2.0);
  EXPECT_EQ(v.verdict, Membership::Member);
  ASSERT_EQ(v.components.size(), 4u);
  EXPECT_NEAR(v.components[1].value, 0.0315652574749645, 1e-10);
}

TEST(Membership, SecondOrderCriticalExponent) {
  const FieldSpec u = catalog::sinlog_second_order(4);
  for (double p : {2.0, 3.0, 3.9}) {
    EXPECT_EQ(sobolev_membership(u, 1, p).verdict, Membership::Member) << p;
  }
  const MembershipVerdict v = sobolev_membership(u, 1, 4.0);
  EXPECT_EQ(v.verdict, Membership::NotMember);
  ASSERT_GE(v.increments.size(), 8u);
  const double oracle = 32.0 * std::numbers::pi * std::numbers::pi * std::log(2.0);
  for (const auto& inc : v.increments) EXPECT_NEAR(inc.increment / oracle, 1.0, 1e-10);
}

TEST(Membership, FourthOrderCriticalExponent) {
  const FieldSpec u = catalog::sinlog_fourth_order(6);
  for (double p : {2.0, 2.5, 2.9}) {
    EXPECT_EQ(sobolev_membership(u, 2, p).verdict, Membership::Member) << p;
  }
  const MembershipVerdict v = sobolev_membership(u, 2, 3.0);
  EXPECT_EQ(v.verdict, Membership::NotMember);
  EXPECT_FALSE(v.increments.empty());
}

TEST(Membership, MonotoneInIndex) {
  const std::vector<double> grid{1.5, 2.0, 2.5, 3.0, 3.5, 3.9, 4.0, 4.5};
  for (const auto& f : {catalog::sinlog_second_order(4), catalog::loglog4d()}) {
    bool seen_out = false;
    for (double p : grid) {
      const Membership m = sobolev_membership(f, 1, p).verdict;
      if (seen_out) EXPECT_NE(m, Membership::Member) << p;
      seen_out = seen_out || m == Membership::NotMember;
    }
  }
}

TEST(HarmonicDecay, LinearFieldRatioIsOne) {
  const std::vector<FieldSpec> corpus{linear_field(5)};
  const std::vector<double> thetas{0.05, 0.2};
  const auto centers = sample_centers(5, 3, 0.2, 4);
  const DecayConstantReport rep = harmonic_decay_constant(corpus, thetas, centers, false, 512);
  EXPECT_NEAR(rep.max_ratio, 1.0, 1e-12);
  for (const auto& row : rep.ratios[0]) {
    for (double v : row) EXPECT_NEAR(v, 1.0, 1e-12);
  }
}

TEST(HarmonicDecay, DegreeTwoStableUnderRefinement) {
  const auto all = comparison_corpus(CorpusKind::Harmonic, 5, 2);
  std::vector<FieldSpec> quadratic;
  for (const auto& f : all) {
    if (f.param("degree") == 2.0) quadratic.push_back(f);
  }
  ASSERT_FALSE(quadratic.empty());
  const std::vector<double> thetas{0.05, 0.1, 0.2};
  const auto centers = sample_centers(5, 5, 0.2, 9);
  const DecayConstantReport rep = harmonic_decay_constant(quadratic, thetas, centers, false, 2048);
  EXPECT_TRUE(std::isfinite(rep.max_ratio));
  EXPECT_GT(rep.max_ratio, 0.0);
  EXPECT_TRUE(rep.stable);
  EXPECT_LT(rep.relative_change, 0.1);
}

TEST(HarmonicDecay, ConstantsAreSkipped) {
  const auto corpus = comparison_corpus(CorpusKind::Harmonic, 3, 1);
  const std::vector<double> thetas{0.1};
  const auto centers = sample_centers(3, 2, 0.2, 0);
  const DecayConstantReport rep = harmonic_decay_constant(corpus, thetas, centers, false, 256);
  EXPECT_EQ(rep.skipped, 1u);
  EXPECT_EQ(rep.ratios.size(), corpus.size() - 1);
  const std::vector<double> bad{0.3};
  EXPECT_THROW(harmonic_decay_constant(corpus, bad, centers), ConfigError);
}
